#include "pcw/pebbling.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "pcw/caps.hpp"
#include "pcw/error.hpp"

namespace pcw {

bool Pebbling::black_only() const {
  for (const Move& m : moves)
    if (m.kind == MoveKind::PlaceWhite || m.kind == MoveKind::RemoveWhite) return false;
  return true;
}

namespace {

bool preds_pebbled(const Dag& g, const PebbleConfig& c, int v) {
  for (int u : g.preds(v))
    if (!c.black.count(u) && !c.white.count(u)) return false;
  return true;
}

}  // namespace

PebbleConfig apply_move(const Dag& g, const PebbleConfig& c, const Move& m) {
  int v = m.vertex;
  if (v < 1 || v > g.size()) throw Error(ErrorCode::IllegalMove, "vertex " + std::to_string(v) + " out of range");
  bool empty = !c.black.count(v) && !c.white.count(v);
  PebbleConfig r = c;
  switch (m.kind) {
    case MoveKind::PlaceBlack:
      if (!empty || !preds_pebbled(g, c, v))
        throw Error(ErrorCode::IllegalMove, "rule 1: " + to_string(m));
      r.black.insert(v);
      break;
    case MoveKind::RemoveBlack:
      if (!c.black.count(v)) throw Error(ErrorCode::IllegalMove, "rule 2: " + to_string(m));
      r.black.erase(v);
      break;
    case MoveKind::PlaceWhite:
      if (!empty) throw Error(ErrorCode::IllegalMove, "rule 3: " + to_string(m));
      r.white.insert(v);
      break;
    case MoveKind::RemoveWhite:
      if (!c.white.count(v) || !preds_pebbled(g, c, v))
        throw Error(ErrorCode::IllegalMove, "rule 4: " + to_string(m));
      r.white.erase(v);
      break;
  }
  return r;
}

std::vector<PebbleConfig> replay(const Dag& g, const Pebbling& p) {
  std::vector<PebbleConfig> out{PebbleConfig{}};
  for (std::size_t i = 0; i < p.moves.size(); ++i) {
    try {
      out.push_back(apply_move(g, out.back(), p.moves[i]));
    } catch (const Error& e) {
      throw Error(ErrorCode::IllegalMove, e.message(), static_cast<long>(i));
    }
  }
  return out;
}

PebblingMetrics validate_pebbling(const Dag& g, const Pebbling& p) {
  auto configs = replay(g, p);
  const PebbleConfig& last = configs.back();
  if (last.black != std::set<int>{g.sink()} || !last.white.empty())
    throw Error(ErrorCode::Incomplete, "final configuration is not ({z}, {})");
  PebblingMetrics m;
  m.time = static_cast<long>(p.moves.size());
  for (const auto& c : configs) m.space = std::max<long>(m.space, static_cast<long>(c.size()));
  return m;
}

Pebbling trivial_black_pebbling(const Dag& g) {
  std::vector<int> order = topological_order(g);
  std::vector<char> placed(g.size() + 1, 0);
  Pebbling p;
  for (int v : order) {
    p.moves.push_back({MoveKind::PlaceBlack, v});
    placed[v] = 1;
    for (int u : g.preds(v)) {
      if (u == g.sink()) continue;
      bool done = std::all_of(g.succs(u).begin(), g.succs(u).end(), [&](int w) { return placed[w]; });
      if (done) p.moves.push_back({MoveKind::RemoveBlack, u});
    }
  }
  return p;
}

namespace {

struct Key {
  uint64_t b, w;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    uint64_t h = k.b * 0x9E3779B97F4A7C15ull ^ (k.w + 0x632BE59BD9B4E019ull + (k.b << 6));
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Shortest complete pebbling with at most s pebbles; empty optional via found=false.
bool bfs(const Dag& g, int s, PebbleMode mode, Pebbling& out) {
  int n = g.size();
  if (mode == PebbleMode::Black && n > caps().pebble_black_vertices)
    throw Error(ErrorCode::StateSpaceExceeded, "black search limited to " +
                                                   std::to_string(caps().pebble_black_vertices) + " vertices");
  if (mode == PebbleMode::BlackWhite && n > caps().pebble_bw_vertices)
    throw Error(ErrorCode::StateSpaceExceeded, "black-white search limited to " +
                                                   std::to_string(caps().pebble_bw_vertices) + " vertices");
  std::vector<uint64_t> pred_mask(n + 1, 0);
  for (int v = 1; v <= n; ++v)
    for (int u : g.preds(v)) pred_mask[v] |= uint64_t{1} << (u - 1);
  const Key goal{uint64_t{1} << (g.sink() - 1), 0};

  struct Node {
    Key key;
    long parent;
    Move move;
  };
  std::vector<Node> nodes;
  std::unordered_map<Key, long, KeyHash> seen;
  nodes.push_back({{0, 0}, -1, {MoveKind::PlaceBlack, 0}});
  seen.emplace(Key{0, 0}, 0);
  long found = -1;
  for (std::size_t head = 0; head < nodes.size() && found < 0; ++head) {
    Key k = nodes[head].key;
    uint64_t occ = k.b | k.w;
    int count = std::popcount(occ);
    auto visit = [&](Key nk, Move m) {
      if (found >= 0 || seen.count(nk)) return;
      if (static_cast<long>(nodes.size()) >= caps().pebble_states)
        throw Error(ErrorCode::StateSpaceExceeded, "state cap reached");
      seen.emplace(nk, static_cast<long>(nodes.size()));
      nodes.push_back({nk, static_cast<long>(head), m});
      if (nk == goal) found = static_cast<long>(nodes.size()) - 1;
    };
    for (int v = 1; v <= n && count < s; ++v) {
      uint64_t bit = uint64_t{1} << (v - 1);
      if (!(occ & bit) && (pred_mask[v] & ~occ) == 0) visit({k.b | bit, k.w}, {MoveKind::PlaceBlack, v});
    }
    for (int v = 1; v <= n; ++v) {
      uint64_t bit = uint64_t{1} << (v - 1);
      if (k.b & bit) visit({k.b & ~bit, k.w}, {MoveKind::RemoveBlack, v});
    }
    if (mode == PebbleMode::BlackWhite) {
      for (int v = 1; v <= n && count < s; ++v) {
        uint64_t bit = uint64_t{1} << (v - 1);
        if (!(occ & bit)) visit({k.b, k.w | bit}, {MoveKind::PlaceWhite, v});
      }
      for (int v = 1; v <= n; ++v) {
        uint64_t bit = uint64_t{1} << (v - 1);
        if ((k.w & bit) && (pred_mask[v] & ~occ) == 0) visit({k.b, k.w & ~bit}, {MoveKind::RemoveWhite, v});
      }
    }
  }
  if (found < 0) return false;
  out.moves.clear();
  for (long i = found; nodes[i].parent >= 0; i = nodes[i].parent) out.moves.push_back(nodes[i].move);
  std::reverse(out.moves.begin(), out.moves.end());
  return true;
}

}  // namespace

SearchResult search_min_space(const Dag& g, PebbleMode mode) {
  validate_dag(g);
  for (int s = 1; s <= g.size(); ++s) {
    SearchResult r;
    if (bfs(g, s, mode, r.witness)) {
      r.value = s;
      return r;
    }
  }
  throw Error(ErrorCode::Infeasible, "no complete pebbling found");
}

SearchResult search_min_time_given_space(const Dag& g, int s, PebbleMode mode) {
  validate_dag(g);
  SearchResult r;
  if (s < 1 || !bfs(g, s, mode, r.witness))
    throw Error(ErrorCode::Infeasible, "no complete pebbling with space " + std::to_string(s));
  r.value = static_cast<long>(r.witness.moves.size());
  return r;
}

std::string to_string(const Move& m) {
  static const char* tags[] = {"pb", "rb", "pw", "rw"};
  return std::string(tags[static_cast<int>(m.kind)]) + " " + std::to_string(m.vertex);
}

std::string to_pebbling_text(const Pebbling& p) {
  std::string s;
  for (const Move& m : p.moves) s += to_string(m) + "\n";
  return s;
}

Pebbling parse_pebbling_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Pebbling p;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    int v = 0;
    if (!(ls >> v)) throw Error(ErrorCode::Parse, "bad move line: " + line);
    MoveKind k;
    if (tag == "pb") k = MoveKind::PlaceBlack;
    else if (tag == "rb") k = MoveKind::RemoveBlack;
    else if (tag == "pw") k = MoveKind::PlaceWhite;
    else if (tag == "rw") k = MoveKind::RemoveWhite;
    else throw Error(ErrorCode::Parse, "unknown move: " + line);
    p.moves.push_back({k, v});
  }
  return p;
}

}  // namespace pcw
