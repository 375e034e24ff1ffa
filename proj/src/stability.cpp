#include "mchom/stability.hpp"

#include <algorithm>
#include <set>

#include "mchom/check.hpp"
#include "mchom/shelling.hpp"

namespace mchom {

namespace {

// Preimage of an oriented face with the re-sorting sign.
std::pair<Face, int> signed_preimage(const Surjection& f, const Face& face) {
  std::vector<Block> mapped;
  mapped.reserve(face.blocks().size());
  for (Block b : face.blocks()) mapped.push_back(f.preimage(b));
  int sign = 1;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    for (std::size_t j = i + 1; j < mapped.size(); ++j)
      if (vertex_compare(mapped[i], mapped[j]) > 0) sign = -sign;
  return {orient(std::move(mapped)), sign};
}

}  // namespace

std::map<Face, Face> induced_map(const Surjection& f, const Complex& Xb, const Complex& Xa) {
  check(Xb.ground_size() == f.b && Xa.ground_size() == f.a,
        "induced_map: complexes do not match the surjection ends");
  std::map<Face, Face> out;
  for (int q = 0; q <= Xb.dimension(); ++q)
    for (const Face& face : Xb.faces_of_dimension(q)) {
      Face image = f.preimage_face(face);
      if (!Xa.is_face(image))
        throw PreimageError(f, face, image,
                            "induced_map: preimage " + image.to_string() + " of face " +
                                face.to_string() + " is not a face (family not fibre-closed)");
      out.emplace(face, std::move(image));
    }
  return out;
}

IntMatrix chain_map_matrix(const Surjection& f, const Complex& Xb, const Complex& Xa, int q) {
  check(Xb.ground_size() == f.b && Xa.ground_size() == f.a,
        "chain_map_matrix: complexes do not match the surjection ends");
  const std::vector<Face>& src = Xb.faces_of_dimension(q);
  const std::vector<Face>& dst = Xa.faces_of_dimension(q);
  IntMatrix out(static_cast<long>(dst.size()), static_cast<long>(src.size()));
  for (long j = 0; j < static_cast<long>(src.size()); ++j) {
    auto [image, sign] = signed_preimage(f, src[static_cast<std::size_t>(j)]);
    std::optional<long> row = Xa.face_index(image);
    if (!row)
      throw PreimageError(f, src[static_cast<std::size_t>(j)], image,
                          "chain_map_matrix: preimage is not a face");
    out.set(*row, j, Int(sign));
  }
  return out;
}

IntMatrix induced_map_on_homology(const Surjection& f, const FamilySpec& family, int q) {
  check(q >= 0, "induced_map_on_homology: q must be >= 0");
  Complex Xb = build_family(family, f.b);
  Complex Xa = build_family(family, f.a);

  // Chain-map identities around degree q; degree -1 is the 1x1 identity on
  // the empty face, so the q = 0 case checks against the augmentations.
  IntMatrix fq = chain_map_matrix(f, Xb, Xa, q);
  IntMatrix fqm1 = chain_map_matrix(f, Xb, Xa, q - 1);
  IntMatrix fqp1 = chain_map_matrix(f, Xb, Xa, q + 1);
  check(fqm1.multiply(Xb.boundary_matrix(q)) == Xa.boundary_matrix(q).multiply(fq),
        "induced_map_on_homology: F d != d F in degree " + std::to_string(q));
  if (Xb.face_count(q + 1) > 0)
    check(fq.multiply(Xb.boundary_matrix(q + 1)) ==
              Xa.boundary_matrix(q + 1).multiply(fqp1),
          "induced_map_on_homology: F d != d F in degree " + std::to_string(q + 1));

  HomologyLattice lb = homology_lattice(Xb, q);
  HomologyLattice la = homology_lattice(Xa, q);
  IntMatrix out(static_cast<long>(la.free_basis.size()),
                static_cast<long>(lb.free_basis.size()));
  for (long j = 0; j < static_cast<long>(lb.free_basis.size()); ++j) {
    std::vector<Int> image = fq.apply(lb.free_basis[static_cast<std::size_t>(j)]);
    std::vector<Int> coords = la.free_coordinates(image);
    for (long i = 0; i < static_cast<long>(coords.size()); ++i)
      if (coords[static_cast<std::size_t>(i)] != 0)
        out.set(i, j, coords[static_cast<std::size_t>(i)]);
  }
  return out;
}

Rat ExpPolyFit::eval(long n) const {
  check(n >= 0, "ExpPolyFit::eval: negative argument");
  Rat total(0);
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    Rat p(0);
    Rat npow(1);
    for (const Rat& c : polys[bi]) {
      p += c * npow;
      npow *= Rat(n);
    }
    total += p * Rat(pow_int(Int(bases[bi]), static_cast<unsigned long>(n)));
  }
  return total;
}

std::optional<ExpPolyFit> fit_exp_poly(const std::map<long, Rat>& values, int max_base,
                                       int max_degree, int held_out) {
  check(max_base >= 1 && max_degree >= 0, "fit_exp_poly: bad base/degree bounds");
  check(held_out >= 2, "fit_exp_poly: need at least two held-out points");
  std::vector<long> ns;
  for (const auto& [n, v] : values) {
    check(n >= 0, "fit_exp_poly: negative n in window");
    ns.push_back(n);
  }
  for (std::size_t i = 1; i < ns.size(); ++i)
    check(ns[i] == ns[i - 1] + 1, "fit_exp_poly: window must be contiguous");

  // Candidate models (bases 1..b, degree <= d), smallest first; ties prefer
  // fewer bases so a pure polynomial wins over a spurious exponential.
  std::vector<std::pair<int, int>> models;
  for (int b = 1; b <= max_base; ++b)
    for (int d = 0; d <= max_degree; ++d) models.emplace_back(b, d);
  std::sort(models.begin(), models.end(), [](const auto& l, const auto& r) {
    long lu = static_cast<long>(l.first) * (l.second + 1);
    long ru = static_cast<long>(r.first) * (r.second + 1);
    return lu != ru ? lu < ru : l < r;
  });

  for (const auto& [nb, deg] : models) {
    long unknowns = static_cast<long>(nb) * (deg + 1);
    for (std::size_t trim = 0;
         static_cast<long>(ns.size() - trim) >= unknowns + held_out; ++trim) {
      // Square system on the first `unknowns` points after the trim.
      QMat a(static_cast<std::size_t>(unknowns), QVec(static_cast<std::size_t>(unknowns), Rat(0)));
      for (long row = 0; row < unknowns; ++row) {
        long n = ns[trim + static_cast<std::size_t>(row)];
        long col = 0;
        for (int b = 1; b <= nb; ++b) {
          Rat bpow(pow_int(Int(b), static_cast<unsigned long>(n)));
          Rat npow(1);
          for (int d = 0; d <= deg; ++d) {
            a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col++)] = npow * bpow;
            npow *= Rat(n);
          }
        }
      }
      QSolver solver(std::move(a));
      QVec rhs;
      for (long row = 0; row < unknowns; ++row)
        rhs.push_back(values.at(ns[trim + static_cast<std::size_t>(row)]));
      std::optional<QVec> x = solver.solve(rhs);
      if (!x) continue;

      ExpPolyFit fit;
      for (int b = 1; b <= nb; ++b) {
        fit.bases.push_back(b);
        std::vector<Rat> poly;
        for (int d = 0; d <= deg; ++d)
          poly.push_back((*x)[static_cast<std::size_t>((b - 1) * (deg + 1) + d)]);
        fit.polys.push_back(std::move(poly));
      }
      bool ok = true;
      for (std::size_t i = trim; i < ns.size(); ++i)
        if (fit.eval(ns[i]) != values.at(ns[i])) { ok = false; break; }
      if (!ok) continue;
      fit.window_lo = static_cast<int>(ns[trim]);
      fit.window_hi = static_cast<int>(ns.back());
      for (std::size_t i = trim + static_cast<std::size_t>(unknowns); i < ns.size(); ++i)
        fit.verified_on.push_back(static_cast<int>(ns[i]));
      return fit;
    }
  }
  return std::nullopt;
}

namespace {

// The homology character of one family member: by shelling when the
// singleton order applies, otherwise over Q from chain data.
ClassFunction member_homology_character(const Complex& X, int q) {
  try {
    ShellingOrder order = singleton_shelling_order(X);
    return homology_character(X, q, order);
  } catch (const std::invalid_argument&) {
    return homology_character_rational(X, q);
  }
}

}  // namespace

LengthAuditReport partition_length_audit(const FamilySpec& family, int q, int n_lo, int n_hi) {
  check(n_lo <= n_hi, "partition_length_audit: empty range");
  LengthAuditReport rep;
  rep.q = q;
  rep.bound = 1L << (q + 1);
  rep.ok = true;
  for (int n = n_lo; n <= n_hi; ++n) {
    Complex X = build_family(family, n);
    ClassFunction chi = member_homology_character(X, q);
    LengthAuditEntry entry;
    entry.n = n;
    entry.vacuous = std::all_of(chi.values.begin(), chi.values.end(),
                                [](const Rat& v) { return v == 0; });
    if (!entry.vacuous) {
      entry.decomposition = decompose(chi);
      for (const auto& [mu, mult] : entry.decomposition)
        entry.max_length = std::max(entry.max_length, static_cast<long>(mu.length()));
      if (entry.max_length > rep.bound) rep.ok = false;
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

namespace {

// Minimal-degree exact polynomial through the points, requiring at least one
// point beyond the interpolation block as verification.
std::optional<std::vector<Rat>> exact_poly_fit(const std::vector<std::pair<long, Rat>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  for (std::size_t deg = 0; deg + 2 <= pts.size(); ++deg) {
    long m = static_cast<long>(deg) + 1;
    QMat a(static_cast<std::size_t>(m), QVec(static_cast<std::size_t>(m), Rat(0)));
    QVec rhs;
    for (long i = 0; i < m; ++i) {
      Rat npow(1);
      for (long d = 0; d < m; ++d) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = npow;
        npow *= Rat(pts[static_cast<std::size_t>(i)].first);
      }
      rhs.push_back(pts[static_cast<std::size_t>(i)].second);
    }
    QSolver solver(std::move(a));
    std::optional<QVec> x = solver.solve(rhs);
    if (!x) continue;
    bool ok = true;
    for (const auto& [n, v] : pts) {
      Rat acc(0), npow(1);
      for (long d = 0; d < m; ++d) {
        acc += (*x)[static_cast<std::size_t>(d)] * npow;
        npow *= Rat(n);
      }
      if (acc != v) { ok = false; break; }
    }
    if (ok) return *x;
  }
  return std::nullopt;
}

}  // namespace

QuasiPolyReport multiplicity_quasipoly(const FamilySpec& family, int q,
                                       const IntegerPartition& lambda, int n_lo, int n_hi,
                                       const std::vector<int>& periods) {
  check(n_lo <= n_hi, "multiplicity_quasipoly: empty range");
  QuasiPolyReport rep;
  rep.lambda = lambda;
  rep.q = q;
  for (int n = n_lo; n <= n_hi; ++n) {
    Complex X = build_family(family, n);
    ClassFunction chi = member_homology_character(X, q);
    IntegerPartition padded = pad_partition(lambda, n);
    ClassFunction irr;
    irr.n = n;
    for (const IntegerPartition& type : cycle_types(n))
      irr.values.emplace_back(static_cast<long>(mn_character(padded, type)));
    Rat m = inner_product(chi, irr);
    check(is_integer(m) && m >= 0, "multiplicity_quasipoly: non-integral multiplicity");
    rep.multiplicities.emplace_back(n, m.get_num().get_si());
  }

  std::vector<int> tries = periods;
  std::sort(tries.begin(), tries.end());
  tries.erase(std::unique(tries.begin(), tries.end()), tries.end());
  for (int p : tries) {
    if (p < 1) continue;
    std::vector<std::vector<Rat>> polys;
    bool all_ok = true;
    for (int r = 0; r < p && all_ok; ++r) {
      std::vector<std::pair<long, Rat>> pts;
      for (const auto& [n, m] : rep.multiplicities)
        if (n % p == r) pts.emplace_back(n, Rat(static_cast<long>(m)));
      if (pts.empty()) {
        polys.emplace_back();  // residue class unused on this window
        continue;
      }
      std::optional<std::vector<Rat>> fit = exact_poly_fit(pts);
      if (!fit) {
        all_ok = false;
        break;
      }
      polys.push_back(std::move(*fit));
    }
    if (all_ok) {
      rep.period = p;
      rep.residue_polys = std::move(polys);
      rep.inconclusive = false;
      break;
    }
  }
  return rep;
}

Rat eval_char_poly(const CharPolyTerm& term, const IntegerPartition& cycle_type) {
  std::map<int, int> mg;
  for (int part : cycle_type.parts) ++mg[part];
  std::set<int> ds;
  for (const auto& [d, m] : mg)
    if (m > 0) ds.insert(d);
  for (const auto& [d, m] : term.nu)
    if (m > 0) ds.insert(d);
  Rat out(1);
  for (int d : ds) {
    long xg = mg.count(d) ? mg.at(d) : 0;
    long xn = term.nu.count(d) ? term.nu.at(d) : 0;
    check(xn >= 0, "eval_char_poly: negative multiplicity in nu");
    if (xn > xg) return Rat(0);  // binom(x, k) = 0 for x < k
    Int base(0);
    for (const auto& [np, anp] : term.a) {
      check(np >= 1 && anp >= 0, "eval_char_poly: bad A entry");
      if (d % np == 0) base += Int(np) * Int(anp);
    }
    long e = xg - xn;
    Int power = e == 0 ? Int(1)  // 0^0 = 1
                       : pow_int(base, static_cast<unsigned long>(e));
    out *= Rat(binomial(xg, xn) * power);
  }
  return out;
}

TorsionScanReport torsion_scan(const FamilySpec& family, int q, int n_lo, int n_hi) {
  check(n_lo <= n_hi, "torsion_scan: empty range");
  TorsionScanReport rep;
  rep.q = q;
  rep.running_lcm = 1;
  for (int n = n_lo; n <= n_hi; ++n) {
    Complex X = build_family(family, n);
    HomologyGroup h = reduced_homology_at(X, q);
    TorsionScanEntry entry;
    entry.n = n;
    entry.torsion = h.torsion;
    entry.exponent = entry.torsion.empty() ? Int(1) : entry.torsion.back();
    Int before = rep.running_lcm;
    mpz_lcm(rep.running_lcm.get_mpz_t(), rep.running_lcm.get_mpz_t(),
            entry.exponent.get_mpz_t());
    rep.growth = rep.running_lcm > before;  // still growing at the window edge
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace mchom
