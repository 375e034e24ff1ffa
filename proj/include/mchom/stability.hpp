#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mchom/families.hpp"
#include "mchom/homology.hpp"
#include "mchom/surjections.hpp"
#include "mchom/symrep.hpp"

namespace mchom {

// Thrown when a preimage of a face fails to be a face of the target complex
// (the family is not fibre-closed at this pair); carries the witness.
class PreimageError : public std::runtime_error {
 public:
  PreimageError(Surjection f, Face source, Face image, const std::string& what_msg)
      : std::runtime_error(what_msg), f(std::move(f)), source(std::move(source)),
        image(std::move(image)) {}
  Surjection f;
  Face source;
  Face image;
};

// The face map of f^*: X_b -> X_a sending {x_0,...,x_q} to
// {f^{-1}x_0,...,f^{-1}x_q}, tabulated on every face of X_b (dimensions
// >= 0).  Throws PreimageError if some image is not a face of X_a.
std::map<Face, Face> induced_map(const Surjection& f, const Complex& Xb, const Complex& Xa);

// Signed matrix of the chain map C_q(X_b) -> C_q(X_a): columns indexed by
// q-faces of X_b, rows by q-faces of X_a; the sign re-sorts the preimage
// blocks into the vertex order.
IntMatrix chain_map_matrix(const Surjection& f, const Complex& Xb, const Complex& Xa, int q);

// Matrix of f^* on free H~_q with respect to the deterministic SNF-derived
// bases of both members of the family (rows: generators on the [a] side).
// The chain-map identities F d = d F are asserted in degrees q and q+1
// before descending.
IntMatrix induced_map_on_homology(const Surjection& f, const FamilySpec& family, int q);

// An exact exponential-polynomial representation
//   f(n) = sum_{b=1}^{B} p_b(n) b^n,  deg p_b <= D.
struct ExpPolyFit {
  std::vector<int> bases;               // 1..B
  std::vector<std::vector<Rat>> polys;  // polys[b-1][d]: coefficient of n^d b^n
  int window_lo = 0, window_hi = 0;     // points the fit reproduces (post-trim)
  std::vector<int> verified_on;         // points beyond the solving block

  Rat eval(long n) const;
};

// Exact fit with minimal-model search: candidate models (B, D) with
// B <= max_base and D <= max_degree are tried smallest-first (by coefficient
// count, then by B).  For each model the B(D+1) coefficients are solved on
// the first B(D+1) points of the window and the remainder is verified
// exactly; leading points are trimmed one at a time (smallest trim wins)
// while at least B(D+1) + held_out points remain.  The first model/trim that
// reproduces every remaining point wins; nullopt if none does.
std::optional<ExpPolyFit> fit_exp_poly(const std::map<long, Rat>& values, int max_base,
                                       int max_degree, int held_out = 2);

// Per-n decomposition of the H~_q character with the maximum partition
// length, checked against the 2^{q+1} bound.
struct LengthAuditEntry {
  int n = 0;
  bool vacuous = false;  // zero homology
  long max_length = 0;
  std::map<IntegerPartition, long long> decomposition;
};

struct LengthAuditReport {
  int q = 0;
  long bound = 0;  // 2^{q+1}
  std::vector<LengthAuditEntry> entries;
  bool ok = false;
};

LengthAuditReport partition_length_audit(const FamilySpec& family, int q, int n_lo, int n_hi);

// Multiplicity of Sp(lambda[n]) in H~_q over an n window, with the smallest
// period whose residue classes each admit an exact polynomial fit (constant
// on a class needs one spare point to verify).  `inconclusive` is set when
// no tried period fits.
struct QuasiPolyReport {
  IntegerPartition lambda;  // the stable tail; lambda[n] pads with n - |lambda|
  int q = 0;
  std::vector<std::pair<int, long long>> multiplicities;  // (n, mult)
  std::optional<int> period;
  std::vector<std::vector<Rat>> residue_polys;  // per residue class, ascending degree
  bool inconclusive = true;
};

QuasiPolyReport multiplicity_quasipoly(const FamilySpec& family, int q,
                                       const IntegerPartition& lambda, int n_lo, int n_hi,
                                       const std::vector<int>& periods);

// One term binom(X, nu) A^{X - nu} of a character polynomial: nu and A are
// given by multiplicities m_d (of d-cycles) and a_{n'} (of parts of A).
struct CharPolyTerm {
  std::map<int, int> nu;  // d -> m_d(nu)
  std::map<int, int> a;   // n' -> a_{n'}
  Rat coefficient;        // carried alongside; not folded into eval
};

// prod_d binom(m_d(g), m_d(nu)) (sum_{n'|d} n' a_{n'})^{m_d(g) - m_d(nu)}
// evaluated on the cycle type of g, with 0^0 = 1 and binom(x, k) = 0 for
// x < k.
Rat eval_char_poly(const CharPolyTerm& term, const IntegerPartition& cycle_type);

// Torsion of H~_q across a window: invariant factors per n, each n's
// exponent (largest factor, 1 if none), and the running lcm.  `growth` is
// set when the lcm still increased at the last window point, i.e. the
// window shows no stabilization.
struct TorsionScanEntry {
  int n = 0;
  std::vector<Int> torsion;
  Int exponent;
};

struct TorsionScanReport {
  int q = 0;
  std::vector<TorsionScanEntry> entries;
  Int running_lcm;
  bool growth = false;
};

TorsionScanReport torsion_scan(const FamilySpec& family, int q, int n_lo, int n_hi);

}  // namespace mchom
