#include "pcw/error.hpp"

#include <cstdlib>
#include <string>

#include "pcw/caps.hpp"

namespace pcw {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PartialAssignment: return "PARTIAL_ASSIGNMENT";
    case ErrorCode::TooManyVariables: return "TOO_MANY_VARIABLES";
    case ErrorCode::TrivialClause: return "TRIVIAL_CLAUSE";
    case ErrorCode::InvalidParam: return "INVALID_PARAM";
    case ErrorCode::Cycle: return "CYCLE";
    case ErrorCode::MultipleSinks: return "MULTIPLE_SINKS";
    case ErrorCode::IndegreeExceeded: return "INDEGREE_EXCEEDED";
    case ErrorCode::IllegalMove: return "ILLEGAL_MOVE";
    case ErrorCode::Incomplete: return "INCOMPLETE";
    case ErrorCode::StateSpaceExceeded: return "STATE_SPACE_EXCEEDED";
    case ErrorCode::Infeasible: return "INFEASIBLE";
    case ErrorCode::NotAnAxiom: return "NOT_AN_AXIOM";
    case ErrorCode::BadPremises: return "BAD_PREMISES";
    case ErrorCode::RuleMismatch: return "RULE_MISMATCH";
    case ErrorCode::WidthExceeded: return "WIDTH_EXCEEDED";
    case ErrorCode::NotImplied: return "NOT_IMPLIED";
    case ErrorCode::NotARefutation: return "NOT_A_REFUTATION";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::FormulaSatisfied: return "FORMULA_SATISFIED";
    case ErrorCode::InvalidPebbling: return "INVALID_PEBBLING";
    case ErrorCode::WhitePebblePresent: return "WHITE_PEBBLE_PRESENT";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::AuthoritarianFunction: return "AUTHORITARIAN_FUNCTION";
    case ErrorCode::NotMinimal: return "NOT_MINIMAL";
    case ErrorCode::NotDerivable: return "NOT_DERIVABLE";
    case ErrorCode::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

static std::string format(ErrorCode code, const std::string& what, long index) {
  std::string s = error_name(code);
  if (index >= 0) s += "(" + std::to_string(index) + ")";
  if (!what.empty()) s += ": " + what;
  return s;
}

Error::Error(ErrorCode code, const std::string& what, long index)
    : std::runtime_error(format(code, what, index)), code_(code), index_(index), message_(what) {}

bool is_cap_error(ErrorCode code) {
  return code == ErrorCode::TooManyVariables || code == ErrorCode::CapExceeded ||
         code == ErrorCode::StateSpaceExceeded;
}

namespace {

template <typename T>
void read_env(const char* name, T& field) {
  if (const char* v = std::getenv(name)) {
    char* end = nullptr;
    long long x = std::strtoll(v, &end, 10);
    if (end != v && *end == '\0' && x > 0) field = static_cast<T>(x);
  }
}

Caps load_caps() {
  Caps c;
  read_env("UNSAFE_PCW_IMPLICATION_VARS", c.implication_vars);
  read_env("UNSAFE_PCW_SUBSTITUTION_ARITY", c.substitution_arity);
  read_env("UNSAFE_PCW_PEBBLE_BLACK_VERTICES", c.pebble_black_vertices);
  read_env("UNSAFE_PCW_PEBBLE_BW_VERTICES", c.pebble_bw_vertices);
  read_env("UNSAFE_PCW_PEBBLE_STATES", c.pebble_states);
  read_env("UNSAFE_PCW_PROJECTION_BASE_VARS", c.projection_base_vars);
  read_env("UNSAFE_PCW_PROJECTION_FORMULAS", c.projection_formulas);
  read_env("UNSAFE_PCW_PROJECTION_BLOCK_VARS", c.projection_block_vars);
  read_env("UNSAFE_PCW_ENUM_VARS", c.enum_vars);
  read_env("UNSAFE_PCW_ENUM_FORMULAS", c.enum_formulas);
  read_env("UNSAFE_PCW_ENUM_TERMS", c.enum_terms);
  // Bitmask representations bound these regardless of the environment.
  if (c.implication_vars > 30) c.implication_vars = 30;
  if (c.projection_formulas > 64) c.projection_formulas = 64;
  if (c.projection_block_vars > 30) c.projection_block_vars = 30;
  if (c.pebble_black_vertices > 64) c.pebble_black_vertices = 64;
  if (c.pebble_bw_vertices > 32) c.pebble_bw_vertices = 32;
  return c;
}

}  // namespace

const Caps& caps() {
  static const Caps c = load_caps();
  return c;
}

}  // namespace pcw
