#pragma once

#include <map>
#include <string>
#include <vector>

#include "pcw/logic.hpp"

namespace pcw {

enum class Rule { Cut, AndIntro, AndElim, Weak, Sem };
enum class StepKind { Download, Infer, Erase };
enum class Mode { Syntactic, Semantic };

struct Step {
  StepKind kind = StepKind::Download;
  Dnf formula;                // downloaded clause or inferred formula
  Rule rule = Rule::Cut;
  std::vector<int> premises;  // ids of live formulas
  int erase_id = 0;

  static Step download(const Clause& c);
  static Step infer(Rule r, std::vector<int> premises, Dnf formula);
  static Step erase(int id);
};

// Formulas in `initial` are on the blackboard before step 1 with ids
// 1..|initial|; they count towards space but not towards length.
struct Derivation {
  int k = 1;
  Mode mode = Mode::Syntactic;
  std::vector<Dnf> initial;
  std::vector<Step> steps;
};

struct Configuration {
  std::map<int, Dnf> formulas;
  int next_id = 1;
};

struct MeasureReport {
  long length = 0;
  long downloads = 0;
  long inferences = 0;
  long erasures = 0;
  long width = 0;           // widest clause; only filled for k = 1
  long formula_space = 0;
  long total_space = 0;
  long variable_space = 0;
  long max_terms = 0;       // most terms in a formula
  long max_formula_size = 0;
  bool refutation = false;
  long first_refutation_step = -1;  // 0-based step index, or -1
};

const char* rule_name(Rule r);

// Applies one step in place; throws with the step's error code.
void apply_step(const Cnf& F, Configuration& config, const Step& step, int k, Mode mode);
Configuration check_step(const Cnf& F, const Configuration& config, const Step& step, int k,
                         Mode mode);

// Incremental replay with measure accounting over distinct formulas.
class Replayer {
 public:
  Replayer(const Cnf& F, int k, Mode mode, const std::vector<Dnf>& initial = {});
  // Returns the new formula id, or 0 for an erasure.
  int apply(const Step& step);
  const Configuration& config() const { return config_; }
  std::vector<Dnf> distinct() const;
  bool has(const Dnf& d) const { return count_.count(d) != 0; }
  int id_of(const Dnf& d) const;  // some live id holding d, 0 if none
  const MeasureReport& report() const { return report_; }
  long steps_applied() const { return index_; }

 private:
  void add(const Dnf& d);
  void remove(const Dnf& d);
  void account();

  const Cnf& F_;
  int k_;
  Mode mode_;
  Configuration config_;
  std::map<Dnf, int> count_;
  std::map<int, int> var_count_;
  long total_ = 0;
  long index_ = 0;
  MeasureReport report_;
};

// Replays every step; throws NOT_A_REFUTATION if 0 never appears.
MeasureReport check_refutation(const Cnf& F, const Derivation& pi);
// Replays without requiring a refutation.
MeasureReport check_derivation(const Cnf& F, const Derivation& pi);

// Distinct formulas of every configuration D_0..D_L.
std::vector<std::vector<Dnf>> configurations(const Cnf& F, const Derivation& pi);

std::string to_trace(const Derivation& pi);
Derivation parse_trace(const std::string& text);

}  // namespace pcw
