#pragma once

// Integral homology via Smith normal form over Z, exact throughout.  The
// elimination runs sparsely while unit pivots exist (Markowitz-style cost
// tie-break), then hands the remaining core to a dense min-magnitude-pivot
// routine; no modular shortcuts anywhere on the reported path.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mchom/intmatrix.hpp"
#include "mchom/ratmat.hpp"
#include "mchom/simplicial.hpp"

namespace mchom {

// Thread budget for per-degree parallelism (reduced_homology and scans).
// Defaults to 1; the CLI sets it from --threads.  Results never depend on it.
int& max_threads();

struct SnfResult {
  std::vector<Int> invariant_factors;  // divisibility chain, all >= 1
  long rank() const { return static_cast<long>(invariant_factors.size()); }
};

SnfResult smith_normal_form(const IntMatrix& m);

// Dense Smith form with unimodular transforms: u * a * v = d (diagonal).
// u_inv is maintained alongside (u * u_inv = identity).  Intended for the
// moderate-size matrices that homology-basis extraction needs.
struct SmithDecomposition {
  std::vector<std::vector<Int>> u, u_inv, v, d;
  std::vector<Int> invariant_factors;
  long rank() const { return static_cast<long>(invariant_factors.size()); }
};

SmithDecomposition smith_with_transforms(std::vector<std::vector<Int>> a);

struct HomologyGroup {
  int q = 0;
  long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

// H̃_q of the reduced chain complex: free rank |X_q| - rank d_q - rank d_{q+1},
// torsion from SNF(d_{q+1}).  Valid for any q >= 0.
HomologyGroup reduced_homology_at(const Complex& x, int q);

// All degrees 0..dim(X).  Degrees run concurrently when max_threads() > 1.
std::map<int, HomologyGroup> reduced_homology(const Complex& x);

struct CrossCheckEntry {
  int q = 0;
  long snf_rank = 0;
  long shelling_rank = 0;
  std::vector<Int> torsion;
  bool ok = false;
};

struct CrossCheckReport {
  bool ok = true;
  std::vector<CrossCheckEntry> entries;
};

// SNF ranks against shelling ranks, degree by degree; requires the order to
// be a shelling of X (throws std::invalid_argument otherwise).  ok requires
// equal ranks and no torsion.
struct ShellingOrder;  // from shelling.hpp
CrossCheckReport homology_cross_check(const Complex& x, const ShellingOrder& order);

// Integer homology data in degree q with explicit cycle representatives:
// columns of cycle_basis span ker d_q over Q (integer vectors), the first
// torsion_count + free_rank entries of quotient coordinates are meaningful.
struct HomologyLattice {
  long chain_dim = 0;                          // |X_q|
  std::vector<std::vector<Int>> kernel_basis;  // columns: basis of ker d_q (Z)
  std::vector<std::vector<Int>> free_basis;    // columns: free-part cycle reps
  // Coordinates of a cycle's class on the free part (exact; throws if the
  // input is not a cycle).
  std::vector<Int> free_coordinates(const std::vector<Int>& cycle) const;

  // solve data: kernel coordinates via kernel_solver, then the row transform
  // of the boundary-relation SNF maps them to quotient coordinates, whose
  // tail (from free_offset) is the free part.
  std::vector<std::vector<Int>> u_y;
  long free_offset = 0;
  std::shared_ptr<const QSolver> kernel_solver;
};

HomologyLattice homology_lattice(const Complex& x, int q);

}  // namespace mchom
