#pragma once

#include <set>
#include <string>
#include <vector>

#include "pcw/graph.hpp"

namespace pcw {

struct PebbleConfig {
  std::set<int> black;
  std::set<int> white;
  std::size_t size() const { return black.size() + white.size(); }
  bool operator==(const PebbleConfig&) const = default;
};

// Declaration order is the search tie-break order.
enum class MoveKind { PlaceBlack, RemoveBlack, PlaceWhite, RemoveWhite };

struct Move {
  MoveKind kind;
  int vertex;
  bool operator==(const Move&) const = default;
};

struct Pebbling {
  std::vector<Move> moves;
  bool black_only() const;
};

struct PebblingMetrics {
  long time = 0;
  long space = 0;
};

enum class PebbleMode { Black, BlackWhite };

// Throws ILLEGAL_MOVE naming the violated rule (1-4).
PebbleConfig apply_move(const Dag& g, const PebbleConfig& c, const Move& m);

// All configurations P_0..P_tau of a legal move sequence.
std::vector<PebbleConfig> replay(const Dag& g, const Pebbling& p);

// Throws ILLEGAL_MOVE(index) or INCOMPLETE.
PebblingMetrics validate_pebbling(const Dag& g, const Pebbling& p);

Pebbling trivial_black_pebbling(const Dag& g);

struct SearchResult {
  long value = 0;  // price or time
  Pebbling witness;
};

SearchResult search_min_space(const Dag& g, PebbleMode mode);
// Throws INFEASIBLE when no complete pebbling fits in s pebbles.
SearchResult search_min_time_given_space(const Dag& g, int s, PebbleMode mode);

std::string to_string(const Move& m);
std::string to_pebbling_text(const Pebbling& p);
Pebbling parse_pebbling_text(const std::string& text);

}  // namespace pcw
