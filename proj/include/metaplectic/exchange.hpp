#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "metaplectic/partitions.hpp"
#include "metaplectic/roots.hpp"

namespace metaplectic {

struct Violation {
  char condition = '?';  // 'a' .. 'e'
  std::string detail;
};

/// (C, X, Y) inside A, with psi_C the restriction of A's character to C.
struct ExchangeQuadruple {
  int rank = 0;
  RootSet C, X, Y;
  Character psi_C;

  /// (C u X, psi_C extended by Zero).
  UnipotentConfig d_side() const;
  /// (C u Y, psi_C extended by Zero).
  UnipotentConfig b_side() const;
};

struct QuadrupleCheck {
  std::optional<ExchangeQuadruple> quadruple;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Conditions (a)-(e) at the level of root combinatorics. Y may lie outside A, in
/// which case everything is checked inside the enlarged set C u X u Y.
QuadrupleCheck verify_quadruple(const UnipotentConfig& A, const RootSet& C, const RootSet& X,
                                const RootSet& Y);

/// D-side to B-side. Throws ConfigMismatch if cfg is not the D-side of q.
UnipotentConfig apply_exchange(const ExchangeQuadruple& q, const UnipotentConfig& cfg);

/// 1-based permutation: root (i,j) goes to (perm[i-1], perm[j-1]).
UnipotentConfig apply_conjugate(const UnipotentConfig& cfg, const std::vector<int>& perm);
/// Torus rescaling: every NonzeroParam becomes One. Requires the non-Zero
/// support to form a forest on {1..r}; otherwise throws InvalidArgument.
UnipotentConfig apply_torus_scaling(const UnipotentConfig& cfg);

enum class Rule { RootExchange, Expand, Conjugate, Axiom };
enum class Status { Vanishing, Nonvanishing };
/// Isomorphism: Jacquet modules of the start and terminal configs agree.
/// VanishingOnly: they vanish together.
enum class Equivalence { Isomorphism, VanishingOnly };

std::string to_string(Rule r);
std::string to_string(Status s);
std::string to_string(Equivalence e);

struct DerivationTrace;

struct ExchangeEvidence {
  RootSet C, X, Y;
  /// "exchange": input is C u X, output C u Y (isomorphism).
  /// "adjoin": input is C alone, X is the virtual partner, output C u Y.
  std::string mode = "exchange";
};

struct ExpandEvidence {
  int row = 0;
  RootSet R;
  /// "zero": output is input u R with Zero on R; witness covers the nonzero characters.
  /// "vanishing": no output; witness covers every character of R.
  std::string mode = "zero";
  std::vector<DerivationTrace> witnesses;
};

struct ConjugateEvidence {
  std::vector<int> perm;  // empty for torus scaling
  bool torus_scaling = false;
};

struct AxiomEvidence {
  Status claim = Status::Vanishing;
};

using Evidence = std::variant<ExchangeEvidence, ExpandEvidence, ConjugateEvidence, AxiomEvidence>;

struct Step {
  Rule rule = Rule::Axiom;
  UnipotentConfig in;
  std::optional<UnipotentConfig> out;  // absent for steps that conclude a status
  Evidence evidence;
};

struct Terminal {
  Status status = Status::Vanishing;
  Equivalence equivalence = Equivalence::Isomorphism;
  /// Config the concluding step was applied to.
  std::optional<UnipotentConfig> config;
};

struct DerivationTrace {
  int n = 2;
  UnipotentConfig start;
  std::vector<Step> steps;
  Terminal terminal;
};

struct Diagnostic {
  int step = -1;  // -1 for trace-level problems
  std::string message;
};

struct TraceCheck {
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Re-verifies each step in isolation, the chaining between steps, the
/// witnesses (recursively) and the recorded terminal.
TraceCheck check_trace(const DerivationTrace& t);

/// Enlarges cfg by the row group R with Zero on R. The witnesses must contain a
/// checked vanishing trace from (rows up to R, psi extended by a NonzeroParam on
/// the simple root of R); otherwise throws IncompleteWitnesses.
UnipotentConfig apply_expand(const UnipotentConfig& cfg, const RootSet& R,
                             const std::vector<DerivationTrace>& witnesses);

/// Exchanges carrying (V2(O), psi) to U_O, with adjoin steps for the roots of
/// h'-weight one when the parts of O have mixed parity.
std::vector<Step> exchange_chain(const Partition& orbit);

/// Scripted derivation from (V2(O), psi_V2). Vanishing when the first part
/// exceeds n, Nonvanishing ending at (U, psi_(n^a b)) for the theta orbit.
/// Throws UnsupportedOrbit otherwise.
DerivationTrace derive_orbit_trace(int n, const Partition& orbit);

enum class OrbitStatus { Vanishing, Nonvanishing, Dominated };
std::string to_string(OrbitStatus s);

struct OrbitClassification {
  Partition orbit;
  OrbitStatus status;
  Dominance versus_theta;
  std::optional<DerivationTrace> trace;
};

/// Status of O relative to the theta orbit (n^a b). Orbits strictly below
/// (n^a b) are reported as Dominated with no trace; any other orbit must have
/// first part > n, which is checked and certified by a trace.
OrbitClassification classify_orbit_status(int n, const Partition& orbit);
std::vector<OrbitClassification> classify_all(int n, int r);

}  // namespace metaplectic
