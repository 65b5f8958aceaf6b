#pragma once

#include <stdexcept>
#include <string>

namespace khom {

enum class errc {
  composition_nonzero,
  not_well_defined,
  not_validated,
  index_out_of_range,
  boundary_square_nonzero,
  not_functorial,
  not_automorphism,
  not_free,
  infinite_index,
  not_chain_map,
  not_a_cycle,
  not_a_cocycle,
  rmax_exceeded,
  parse_error,
  duplicate_name,
  unknown_reference,
  bad_argument,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

}  // namespace khom
