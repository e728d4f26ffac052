#pragma once

namespace pcw {

// Hard limits for the exhaustive procedures. Each can be raised through an
// environment variable named UNSAFE_PCW_<FIELD> (upper case), read once.
struct Caps {
  int implication_vars = 24;
  int substitution_arity = 8;
  int pebble_black_vertices = 24;
  int pebble_bw_vertices = 14;
  long pebble_states = 20'000'000;
  int projection_base_vars = 12;
  int projection_formulas = 64;
  int projection_block_vars = 24;
  int enum_vars = 8;
  int enum_formulas = 3;
  int enum_terms = 2;  // terms per formula in the enumerator, k >= 2
};

const Caps& caps();

}  // namespace pcw
