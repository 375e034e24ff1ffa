// mchom: exact homology of matching complexes and their families.
//
// Subcommands: homology, betti, character, shelling (verify|order), stirling,
// snf, fs-map, torsion-scan, family-audit.  JSON on stdout by default
// (--format table for humans); exit 0 on success, 2 on usage errors, 3 on
// violated computation preconditions (with a structured error payload).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mchom/families.hpp"
#include "mchom/homology.hpp"
#include "mchom/partitions.hpp"
#include "mchom/shelling.hpp"
#include "mchom/stability.hpp"
#include "mchom/symrep.hpp"

using json = nlohmann::ordered_json;
using namespace mchom;

namespace {

json json_int(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json json_rat(const Rat& v) {
  if (is_integer(v) && v.get_num().fits_slong_p()) return json(v.get_num().get_si());
  return json(to_string(v));
}

json json_torsion(const std::vector<Int>& torsion) {
  json arr = json::array();
  for (const Int& t : torsion) arr.push_back(json_int(t));
  return arr;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("--n-range", "expected LO..HI, got '" + s + "'");
  try {
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    if (lo > hi) throw CLI::ValidationError("--n-range", "empty range '" + s + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("--n-range", "expected LO..HI, got '" + s + "'");
  }
}

// ---- table rendering ------------------------------------------------------

bool is_scalar(const json& j) {
  return j.is_primitive();
}

std::string scalar_str(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void render_table(const json& j, std::ostream& os, int indent = 0);

void render_object_array(const json& arr, std::ostream& os, int indent) {
  std::vector<std::string> cols;
  for (const auto& [k, v] : arr.front().items()) cols.push_back(k);
  std::vector<std::vector<std::string>> cells;
  cells.emplace_back(cols);
  for (const auto& row : arr) {
    std::vector<std::string> line;
    for (const std::string& c : cols) {
      if (!row.contains(c)) { line.push_back("-"); continue; }
      const json& cell = row.at(c);
      if (is_scalar(cell)) line.push_back(scalar_str(cell));
      else line.push_back(cell.dump());
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(cols.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i)
      width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    os << std::string(static_cast<std::size_t>(indent), ' ');
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size())
        os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << "\n";
  }
}

void render_table(const json& j, std::ostream& os, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(j)) {
    os << pad << scalar_str(j) << "\n";
    return;
  }
  if (j.is_array()) {
    if (!j.empty() && j.front().is_object()) {
      render_object_array(j, os, indent);
    } else {
      os << pad;
      for (std::size_t i = 0; i < j.size(); ++i)
        os << (i ? " " : "") << scalar_str(j[i]);
      os << "\n";
    }
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (is_scalar(v)) {
      os << pad << k << ": " << scalar_str(v) << "\n";
    } else if (v.is_array() && (v.empty() || is_scalar(v.front()))) {
      os << pad << k << ":";
      for (const auto& e : v) os << " " << scalar_str(e);
      os << "\n";
    } else {
      os << pad << k << ":\n";
      render_table(v, os, indent + 2);
    }
  }
}

void emit(const json& payload, const std::string& format) {
  if (format == "table")
    render_table(payload, std::cout);
  else
    std::cout << payload.dump(2) << "\n";
}

// ---- shared pieces --------------------------------------------------------

ClassFunction family_member_character(const Complex& X, int q) {
  try {
    ShellingOrder order = singleton_shelling_order(X);
    return homology_character(X, q, order);
  } catch (const std::invalid_argument&) {
    return homology_character_rational(X, q);
  }
}

json group_entry(int q, long rank, const std::optional<std::vector<Int>>& torsion) {
  json g;
  g["q"] = q;
  g["rank"] = rank;
  g["torsion"] = torsion ? json_torsion(*torsion) : json(nullptr);
  return g;
}

json face_strings(const std::vector<Face>& faces) {
  json arr = json::array();
  for (const Face& f : faces) arr.push_back(f.to_string());
  return arr;
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  std::vector<std::vector<Int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) row.emplace_back(tok);
    if (row.empty()) continue;
    if (!rows.empty() && rows.back().size() != row.size())
      throw std::invalid_argument("ragged matrix file: " + path);
    rows.push_back(std::move(row));
  }
  IntMatrix m(static_cast<long>(rows.size()),
              rows.empty() ? 0 : static_cast<long>(rows.front().size()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
        m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

std::vector<int> read_order_file(const std::string& path, std::size_t num_facets) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open order file: " + path);
  std::vector<int> order;
  int idx = 0;
  while (in >> idx) order.push_back(idx);
  if (order.size() != num_facets)
    throw std::invalid_argument("order file lists " + std::to_string(order.size()) +
                                " indices for " + std::to_string(num_facets) + " facets");
  std::vector<bool> seen(num_facets, false);
  for (int i : order) {
    if (i < 0 || static_cast<std::size_t>(i) >= num_facets || seen[static_cast<std::size_t>(i)])
      throw std::invalid_argument("order file is not a permutation of 0.." +
                                  std::to_string(num_facets - 1));
    seen[static_cast<std::size_t>(i)] = true;
  }
  return order;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homology of matching complexes and their families"};
  app.require_subcommand(1);

  std::string format = "json";
  int threads = 0;
  app.add_option("--format", format, "Output format: json (default) or table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--threads", threads,
                 "Worker threads for per-degree parallelism (default: all cores); "
                 "output does not depend on it");

  // homology
  auto* cmd_hom = app.add_subcommand("homology", "Reduced integral homology of a family member");
  std::string hom_family = "X";
  int hom_n = 0;
  std::optional<int> hom_q;
  std::string hom_method = "snf";
  cmd_hom->add_option("--family", hom_family, "Family spec, e.g. X, skeleton1, matching:K7")
      ->required();
  cmd_hom->add_option("--n", hom_n, "Member index n")->required();
  cmd_hom->add_option("--q", hom_q, "Restrict to one degree");
  cmd_hom->add_option("--method", hom_method, "snf (default), shelling, or both")
      ->check(CLI::IsMember({"snf", "shelling", "both"}));

  // betti
  auto* cmd_betti = app.add_subcommand("betti", "Rank of H~_q across an n window, optionally fit");
  std::string betti_family = "X", betti_range;
  int betti_q = 1, betti_max_base = 4, betti_max_degree = 2, betti_held_out = 2;
  bool betti_fit = false;
  cmd_betti->add_option("--family", betti_family, "Family spec")->required();
  cmd_betti->add_option("--q", betti_q, "Homology degree")->required();
  cmd_betti->add_option("--n-range", betti_range, "Window LO..HI")->required();
  cmd_betti->add_flag("--fit", betti_fit, "Fit an exact exponential-polynomial");
  cmd_betti->add_option("--max-base", betti_max_base, "Largest base B (default 4)");
  cmd_betti->add_option("--max-degree", betti_max_degree, "Largest polynomial degree D (default 2)");
  cmd_betti->add_option("--held-out", betti_held_out, "Verification points beyond the solve block");

  // character
  auto* cmd_char = app.add_subcommand("character", "S_n character on H~_q of a family member");
  std::string char_family = "X";
  int char_n = 0, char_q = 1;
  bool char_decompose = false;
  cmd_char->add_option("--family", char_family, "Family spec")->required();
  cmd_char->add_option("--n", char_n, "Member index n")->required();
  cmd_char->add_option("--q", char_q, "Homology degree")->required();
  cmd_char->add_flag("--decompose", char_decompose, "Decompose into irreducibles");

  // shelling verify / order
  auto* cmd_sh = app.add_subcommand("shelling", "Shelling checks and orders");
  cmd_sh->require_subcommand(1);
  auto* cmd_shv = cmd_sh->add_subcommand("verify", "Check a facet order for the shelling condition");
  std::string shv_facets, shv_order;
  std::optional<int> shv_ground;
  cmd_shv->add_option("--facets", shv_facets, "Facet file, one canonical facet per line")
      ->required();
  cmd_shv->add_option("--order", shv_order,
                      "Order file: facet indices (0-based, into the facet list), one per line")
      ->required();
  cmd_shv->add_option("--ground", shv_ground, "Ground-set size override");
  auto* cmd_sho = cmd_sh->add_subcommand("order", "Emit the singleton-count shelling order");
  std::string sho_family = "X", sho_tie = "lex-asc";
  int sho_n = 0;
  std::uint64_t sho_seed = 0;
  cmd_sho->add_option("--family", sho_family, "Family spec")->required();
  cmd_sho->add_option("--n", sho_n, "Member index n")->required();
  cmd_sho->add_option("--tie-break", sho_tie, "lex-asc (default), lex-desc, or seeded")
      ->check(CLI::IsMember({"lex-asc", "lex-desc", "seeded"}));
  cmd_sho->add_option("--seed", sho_seed, "Seed for the seeded tie-break");

  // stirling
  auto* cmd_stir = app.add_subcommand("stirling", "Stirling numbers of the second kind");
  long stir_n = 0, stir_k = 0, stir_assoc = 1;
  cmd_stir->add_option("--n", stir_n, "Ground-set size")->required();
  cmd_stir->add_option("--k", stir_k, "Number of blocks")->required();
  cmd_stir->add_option("--assoc", stir_assoc, "Minimum block size r (default 1 = classical)");

  // snf
  auto* cmd_snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  std::string snf_file;
  cmd_snf->add_option("--matrix", snf_file, "Whitespace-separated integer rows")->required();

  // fs-map
  auto* cmd_fs = app.add_subcommand("fs-map", "Induced map on H~_q along a surjection");
  std::string fs_f, fs_family = "X";
  int fs_q = 1;
  cmd_fs->add_option("--f", fs_f, "Surjection images, e.g. \"1 2 3 3\" for [4] ->> [3]")
      ->required();
  cmd_fs->add_option("--family", fs_family, "Family spec")->required();
  cmd_fs->add_option("--q", fs_q, "Homology degree")->required();

  // torsion-scan
  auto* cmd_tor = app.add_subcommand("torsion-scan", "Torsion of H~_q across an n window");
  std::string tor_family, tor_range;
  int tor_q = 1;
  cmd_tor->add_option("--family", tor_family, "Family spec")->required();
  cmd_tor->add_option("--q", tor_q, "Homology degree")->required();
  cmd_tor->add_option("--n-range", tor_range, "Window LO..HI")->required();

  // family-audit
  auto* cmd_aud = app.add_subcommand("family-audit", "Fibre-closedness audit of a family");
  std::string aud_family;
  int aud_nmax = 0, aud_full = 6;
  cmd_aud->add_option("--family", aud_family, "Family spec")->required();
  cmd_aud->add_option("--n-max", aud_nmax, "Largest member to audit")->required();
  cmd_aud->add_option("--full-limit", aud_full,
                      "Full surjection enumeration up to this a (orbit reduction above)");

  // Let the global --format/--threads appear after a subcommand too.
  for (CLI::App* sub : {cmd_hom, cmd_betti, cmd_char, cmd_sh, cmd_shv, cmd_sho, cmd_stir,
                        cmd_snf, cmd_fs, cmd_tor, cmd_aud})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  max_threads() = threads > 0
                      ? threads
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  try {
    json out;

    if (app.got_subcommand(cmd_hom)) {
      FamilySpec spec = FamilySpec::parse(hom_family);
      Complex X = build_family(spec, hom_n);
      out["command"] = "homology";
      out["family"] = hom_family;
      out["n"] = hom_n;
      out["method"] = hom_method;
      json groups = json::array();
      std::map<int, long> shell_ranks;
      if (hom_method != "snf")
        shell_ranks = homology_ranks_from_shelling(X, singleton_shelling_order(X));
      bool agree = true;
      auto degrees = [&]() {
        std::vector<int> qs;
        if (hom_q) qs.push_back(*hom_q);
        else
          for (int q = 0; q <= X.dimension(); ++q) qs.push_back(q);
        return qs;
      }();
      for (int q : degrees) {
        if (hom_method == "shelling") {
          long r = shell_ranks.count(q) ? shell_ranks.at(q) : 0;
          groups.push_back(group_entry(q, r, std::nullopt));
        } else {
          HomologyGroup h = reduced_homology_at(X, q);
          groups.push_back(group_entry(q, h.free_rank, h.torsion));
          if (hom_method == "both") {
            long r = shell_ranks.count(q) ? shell_ranks.at(q) : 0;
            if (r != h.free_rank || !h.torsion.empty()) agree = false;
          }
        }
      }
      out["groups"] = std::move(groups);
      if (hom_method == "both") out["agreement"] = agree;
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_betti)) {
      FamilySpec spec = FamilySpec::parse(betti_family);
      auto [lo, hi] = parse_range(betti_range);
      out["command"] = "betti";
      out["family"] = betti_family;
      out["q"] = betti_q;
      out["n_range"] = {lo, hi};
      std::map<long, Rat> window;
      json values = json::array();
      for (int n = lo; n <= hi; ++n) {
        Int v;
        if (spec.kind == FamilySpec::Kind::X) {
          // For X(n) the shelling theorem gives the rank as the
          // singleton-free partition count; no matrix work needed.
          v = beta(n, betti_q);
        } else {
          v = reduced_homology_at(build_family(spec, n), betti_q).free_rank;
        }
        window[n] = Rat(v);
        values.push_back({{"n", n}, {"value", json_int(v)}});
      }
      out["values"] = std::move(values);
      if (betti_fit) {
        std::optional<ExpPolyFit> fit =
            fit_exp_poly(window, betti_max_base, betti_max_degree, betti_held_out);
        if (fit) {
          json f;
          f["window"] = {fit->window_lo, fit->window_hi};
          f["verified_on"] = fit->verified_on;
          json polys;
          for (std::size_t i = 0; i < fit->bases.size(); ++i) {
            json coeffs = json::array();
            for (const Rat& c : fit->polys[i]) coeffs.push_back(to_string(c));
            polys[std::to_string(fit->bases[i])] = std::move(coeffs);
          }
          f["polys"] = std::move(polys);
          out["fit"] = std::move(f);
        } else {
          out["fit"] = nullptr;
        }
      }
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_char)) {
      FamilySpec spec = FamilySpec::parse(char_family);
      Complex X = build_family(spec, char_n);
      ClassFunction chi = family_member_character(X, char_q);
      out["command"] = "character";
      out["family"] = char_family;
      out["n"] = char_n;
      out["q"] = char_q;
      json types = json::array(), vals = json::array();
      for (const IntegerPartition& t : cycle_types(char_n)) types.push_back(t.to_string());
      for (const Rat& v : chi.values) vals.push_back(json_rat(v));
      out["cycle_types"] = std::move(types);
      out["values"] = std::move(vals);
      if (char_decompose) {
        json mult;
        for (const auto& [mu, m] : decompose(chi)) mult[mu.to_string()] = m;
        out["multiplicities"] = std::move(mult);
      }
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_sh) && cmd_sh->got_subcommand(cmd_shv)) {
      Complex X = read_facets_file(shv_facets, shv_ground);
      ShellingOrder order;
      order.facet_order = read_order_file(shv_order, X.facets().size());
      ShellingCheckResult res = check_shelling(X, order);
      out["command"] = "shelling-verify";
      out["is_shelling"] = res.is_shelling;
      if (res.violation) {
        json w;
        w["position"] = res.violation->position;
        w["facet"] = res.violation->facet.to_string();
        w["reason"] = res.violation->reason;
        if (res.violation->bad_face) w["bad_face"] = res.violation->bad_face->to_string();
        out["witness"] = std::move(w);
      } else {
        out["witness"] = nullptr;
        json by_dim;
        for (const auto& [dim, faces] : homology_facets(X, order))
          by_dim[std::to_string(dim)] = face_strings(faces);
        out["homology_facets_by_dim"] = std::move(by_dim);
      }
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_sh) && cmd_sh->got_subcommand(cmd_sho)) {
      FamilySpec spec = FamilySpec::parse(sho_family);
      Complex X = build_family(spec, sho_n);
      TieBreak tb = sho_tie == "lex-desc" ? TieBreak::LexDesc
                    : sho_tie == "seeded" ? TieBreak::Seeded
                                          : TieBreak::LexAsc;
      ShellingOrder order = singleton_shelling_order(X, tb, sho_seed);
      if (format == "table") {
        // One index per line: directly usable as an --order file.
        for (int i : order.facet_order) std::cout << i << "\n";
        return 0;
      }
      out["command"] = "shelling-order";
      out["family"] = sho_family;
      out["n"] = sho_n;
      out["tie_break"] = sho_tie;
      out["facet_order"] = order.facet_order;
      json facets = json::array();
      for (const Face& f : X.facets()) facets.push_back(f.to_string());
      out["facets"] = std::move(facets);
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_stir)) {
      Int v = stir_assoc == 1 ? stirling2(stir_n, stir_k)
                              : assoc_stirling2(stir_n, stir_k, stir_assoc);
      if (format == "table") {
        std::cout << v.get_str() << "\n";
        return 0;
      }
      out["command"] = "stirling";
      out["n"] = stir_n;
      out["k"] = stir_k;
      out["assoc"] = stir_assoc;
      out["value"] = json_int(v);
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_snf)) {
      IntMatrix m = read_matrix_file(snf_file);
      SnfResult res = smith_normal_form(m);
      out["command"] = "snf";
      out["rows"] = m.rows();
      out["cols"] = m.cols();
      out["rank"] = res.rank();
      out["invariant_factors"] = json_torsion(res.invariant_factors);
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_fs)) {
      Surjection f = Surjection::parse(fs_f);
      FamilySpec spec = FamilySpec::parse(fs_family);
      IntMatrix m = induced_map_on_homology(f, spec, fs_q);
      out["command"] = "fs-map";
      out["f"] = f.to_string();
      out["a"] = f.a;
      out["b"] = f.b;
      out["family"] = fs_family;
      out["q"] = fs_q;
      out["rows"] = m.rows();
      out["cols"] = m.cols();
      json mat = json::array();
      for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(json_int(m.get(i, j)));
        mat.push_back(std::move(row));
      }
      out["matrix"] = std::move(mat);
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_tor)) {
      FamilySpec spec = FamilySpec::parse(tor_family);
      auto [lo, hi] = parse_range(tor_range);
      TorsionScanReport rep = torsion_scan(spec, tor_q, lo, hi);
      out["command"] = "torsion-scan";
      out["family"] = tor_family;
      out["q"] = tor_q;
      out["n_range"] = {lo, hi};
      json entries = json::array();
      for (const TorsionScanEntry& e : rep.entries)
        entries.push_back({{"n", e.n},
                           {"torsion", json_torsion(e.torsion)},
                           {"exponent", json_int(e.exponent)}});
      out["entries"] = std::move(entries);
      out["running_lcm"] = json_int(rep.running_lcm);
      out["growth"] = rep.growth;
      emit(out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_aud)) {
      FamilySpec spec = FamilySpec::parse(aud_family);
      FibreClosedReport rep = is_fibre_closed(spec, aud_nmax, aud_full);
      out["command"] = "family-audit";
      out["family"] = aud_family;
      out["n_max"] = aud_nmax;
      out["fibre_closed"] = rep.fibre_closed;
      if (rep.witness) {
        json w;
        w["a"] = rep.witness->a;
        w["b"] = rep.witness->b;
        w["f"] = rep.witness->f.to_string();
        w["sigma"] = rep.witness->sigma.to_string();
        w["preimage"] = rep.witness->preimage.to_string();
        out["witness"] = std::move(w);
      } else {
        out["witness"] = nullptr;
      }
      json strat = json::array();
      for (const auto& [a, s] : rep.strategy) strat.push_back({{"a", a}, {"mode", s}});
      out["strategy"] = std::move(strat);
      emit(out, format);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const PreimageError& e) {
    json err;
    err["error"] = {{"type", "preimage"},
                    {"message", e.what()},
                    {"f", e.f.to_string()},
                    {"source", e.source.to_string()},
                    {"image", e.image.to_string()}};
    std::cout << err.dump(2) << "\n";
    return 3;
  } catch (const ActionError& e) {
    json err;
    err["error"] = {{"type", "action"},
                    {"message", e.what()},
                    {"g", e.g.to_string()},
                    {"source", e.source.to_string()},
                    {"image", e.image.to_string()}};
    std::cout << err.dump(2) << "\n";
    return 3;
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"type", "precondition"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 3;
  }

  return 0;
}
