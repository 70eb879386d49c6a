#include "unicover/cli.hpp"

#include "unicover/subdivide.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

namespace unicover {

namespace {

struct Globals {
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

// Computation refused for a well-formed document (wrong cone type, bad flag).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json read_document(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(path);
    if (!file) throw InputError("input: cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("input: not valid JSON (") + e.what() + ")");
  }
}

class Emitter {
 public:
  Emitter(const Globals& g, std::ostream& out) : globals_(g), out_(out) {}

  void document(const Json& j) {
    if (globals_.format == "tsv")
      throw InputError("--format: tsv is available for bounds, hseq, probe and ensemble only");
    write(j.dump(2) + "\n");
  }

  template <class Table>
  void table(const Table& t) {
    write(globals_.format == "tsv" ? to_tsv(t) : to_json(t).dump(2) + "\n");
  }

 private:
  void write(const std::string& text) {
    if (globals_.output.empty() || globals_.output == "-") {
      out_ << text;
      return;
    }
    std::ofstream file(globals_.output, std::ios::binary);
    if (!file || !(file << text)) throw InputError("--output: cannot write " + globals_.output);
  }

  const Globals& globals_;
  std::ostream& out_;
};

Cone read_cone(const Json& doc) {
  if (document_kind(doc) != "cone") throw FormatError("kind: expected \"cone\"");
  return cone_from_json(doc);
}

SimplicialCone full_simplicial(const Cone& c) {
  if (!c.full_dimensional()) throw InputError("generators: cone is not full-dimensional");
  if (!c.simplicial()) throw InputError("generators: cone is not simplicial");
  return SimplicialCone(c.generators());
}

Triangulation triangulate_document(const Json& doc) {
  Triangulation t;
  const auto kind = document_kind(doc);
  if (kind == "cone") {
    const Cone c = cone_from_json(doc);
    if (!c.full_dimensional()) throw InputError("generators: cone is not full-dimensional");
    t.mode = "cone";
    t.dim = c.dim();
    for (const auto& piece : triangulate_cone(c).members)
      for (const auto& member : refine_to_empty(piece).members) t.cells.push_back(member.generators());
  } else if (kind == "polytope") {
    const LatticePolytope p = polytope_from_json(doc);
    t.mode = "polytope";
    t.dim = p.ambient_dim();
    for (const auto& s : triangulate_polytope_empty(p)) t.cells.push_back(s.integer_vertices());
  } else {
    throw FormatError("kind: expected \"cone\" or \"polytope\", found \"" + kind + "\"");
  }
  return t;
}

std::pair<long, long> parse_range(const std::string& text) {
  static const std::regex pattern("([0-9]+)\\.\\.([0-9]+)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw InputError("--range: expected A..B, found \"" + text + "\"");
  const long a = std::stol(m[1]);
  const long b = std::stol(m[2]);
  if (a < 1 || a > b) throw InputError("--range: expected 1 <= A <= B");
  return {a, b};
}

ProbeTable probe_document(const Json& doc, const std::pair<long, long>& range, std::size_t depth) {
  const auto kind = document_kind(doc);
  if (kind == "cone") return {"cone", probe_minimal_factor(cone_from_json(doc), range.first, range.second, depth)};
  if (kind == "polytope")
    return {"polytope", probe_minimal_factor(polytope_from_json(doc), range.first, range.second, depth)};
  throw FormatError("kind: expected \"cone\" or \"polytope\", found \"" + kind + "\"");
}

EnsembleItem ensemble_item(const std::vector<IntVector>& gens) {
  EnsembleItem item;
  const SimplicialCone c(gens);
  item.generators = c.generators();
  item.multiplicity = c.multiplicity();
  item.empty = is_empty_simplex(base_simplex(c));
  const auto cert = cover_cone(c.as_cone());
  item.members = cert.members.size();
  for (const auto& m : cert.members)
    for (const auto& g : m) item.max_height = std::max(item.max_height, c.height(to_rational(g)));
  item.verdict = verify_cover(cert).verdict;
  return item;
}

}  // namespace

std::vector<IntVector> ensemble_cone(std::uint64_t seed, std::size_t item, std::size_t d, long max_entry) {
  const std::uint64_t index = item;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<long> entry(-max_entry, max_entry);
  while (true) {
    std::vector<IntVector> gens(d, IntVector(d));
    for (auto& v : gens)
      for (auto& x : v) x = entry(rng);
    if (rank(std::span<const IntVector>(gens)) == d) return gens;
  }
}

EnsembleSummary run_ensemble(std::size_t d, std::size_t count, long max_entry, std::uint64_t seed, std::size_t jobs) {
  if (d < 2) throw InputError("--d: must be at least 2");
  if (max_entry < 1) throw InputError("--max-entry: must be at least 1");
  EnsembleSummary s;
  s.d = d;
  s.count = count;
  s.seed = seed;
  s.max_entry = max_entry;
  s.items.resize(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        s.items[i] = ensemble_item(ensemble_cone(seed, i, d, max_entry));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(1, std::min(jobs, count)); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& item : s.items) {
    if (item.verdict == Verdict::pass) ++s.passed;
    else if (item.verdict == Verdict::fail) ++s.failed;
    else ++s.inconclusive;
  }
  return s;
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unimodular covers of rational cones and lattice polytopes, with an exact verifier.", "unicover"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for all randomness");
  app.add_option("--format", g.format, "Output format for tables")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("-o,--output", g.output, "Output file (default: standard output)");

  std::string input = "-";
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Input document, - for standard input"); };

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert basis of a cone");
  add_input(hilbert);
  auto* triangulate = app.add_subcommand("triangulate", "Empty simplicial pieces of a cone or polytope");
  add_input(triangulate);
  auto* resolve = app.add_subcommand("resolve", "Unimodular resolution of a simplicial cone");
  add_input(resolve);

  auto* cover_cone_cmd = app.add_subcommand("cover-cone", "Unimodular cover certificate of a cone");
  add_input(cover_cone_cmd);
  std::string factor_override;
  cover_cone_cmd->add_option("--factor-override", factor_override, "Claimed factor to record instead of the bound");

  auto* cover_poly = app.add_subcommand("cover-poly", "Unimodular cover certificate of a polytope multiple");
  add_input(cover_poly);
  std::string multiple;
  cover_poly->add_option("--multiple", multiple, "Dilation factor c")->required();

  std::size_t max_depth = kDefaultMaxDepth;
  auto* verify = app.add_subcommand("verify", "Verify a cover certificate (exit 0 pass, 2 fail, 3 inconclusive)");
  add_input(verify);
  verify->add_option("--max-depth", max_depth, "Coverage search depth limit");

  std::size_t dmax = 10;
  auto* bounds = app.add_subcommand("bounds", "Table of the cover bounds");
  bounds->add_option("--dmax", dmax, "Largest dimension")->required()->check(CLI::Range(2, 1000));

  std::size_t hseq_d = 2;
  long kmax = 10;
  auto* hseq = app.add_subcommand("hseq", "Table of the height sequence h_k");
  hseq->add_option("--d", hseq_d, "Dimension")->required()->check(CLI::Range(2, 1000));
  hseq->add_option("--kmax", kmax, "Largest index")->required()->check(CLI::Range(1, 100000));

  std::string range;
  auto* probe = app.add_subcommand("probe", "Verify covers at each factor of a range");
  add_input(probe);
  probe->add_option("--range", range, "Factors A..B")->required();
  probe->add_option("--max-depth", max_depth, "Coverage search depth limit");

  std::size_t ens_d = 2, count = 10;
  long max_entry = 10;
  auto* ensemble = app.add_subcommand("ensemble", "Cover and verify random simplicial cones");
  ensemble->add_option("--d", ens_d, "Dimension")->required();
  ensemble->add_option("--count", count, "Number of cones")->required();
  ensemble->add_option("--max-entry", max_entry, "Generator entries lie in [-M, M]")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  Emitter emit(g, out);
  try {
    if (hilbert->parsed()) {
      emit.document(to_json(hilbert_basis(read_cone(read_document(input, in)))));
    } else if (triangulate->parsed()) {
      emit.document(to_json(triangulate_document(read_document(input, in))));
    } else if (resolve->parsed()) {
      emit.document(to_json(resolve_cone(full_simplicial(read_cone(read_document(input, in))))));
    } else if (cover_cone_cmd->parsed()) {
      std::optional<Rational> factor;
      if (!factor_override.empty()) {
        factor = parse_rational(Json(factor_override), "--factor-override");
        if (*factor <= 0) throw InputError("--factor-override: must be positive");
      }
      emit.document(to_json(cover_cone(read_cone(read_document(input, in)), factor)));
    } else if (cover_poly->parsed()) {
      const Integer c = parse_integer(Json(multiple), "--multiple");
      if (c <= 0) throw InputError("--multiple: must be positive");
      const Json doc = read_document(input, in);
      if (document_kind(doc) != "polytope") throw FormatError("kind: expected \"polytope\"");
      emit.document(to_json(cover_polytope_multiple(polytope_from_json(doc), c)));
    } else if (verify->parsed()) {
      const auto report = verify_cover(certificate_from_json(read_document(input, in)), max_depth);
      emit.document(to_json(report));
      return report.verdict == Verdict::pass ? 0 : report.verdict == Verdict::fail ? 2 : 3;
    } else if (bounds->parsed()) {
      BoundsTable t;
      for (std::size_t d = 2; d <= dmax; ++d) t.rows.push_back(cone_cover_bounds(d));
      emit.table(t);
    } else if (hseq->parsed()) {
      HSeqTable t;
      t.d = hseq_d;
      const auto h = h_sequence(hseq_d, kmax);
      long k = 2 - static_cast<long>(hseq_d);
      for (const auto& v : h) t.rows.emplace_back(k++, v);
      emit.table(t);
    } else if (probe->parsed()) {
      const auto r = parse_range(range);
      emit.table(probe_document(read_document(input, in), r, max_depth));
    } else if (ensemble->parsed()) {
      emit.table(run_ensemble(ens_d, count, max_entry, g.seed, g.jobs));
    }
  } catch (const MultipleNotAdmissible& e) {
    err << "unicover: --multiple: " << e.what() << "; minimal admissible multiple is " << e.minimal_multiple() << "\n";
    return 1;
  } catch (const FormatError& e) {
    err << "unicover: malformed input: " << e.what() << "\n";
    return 1;
  } catch (const StructuralError& e) {
    err << "unicover: malformed certificate: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "unicover: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    err << "unicover: input: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "unicover: input: " << e.what() << "\n";
    return 1;
  } catch (const DimensionError& e) {
    err << "unicover: input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "unicover: internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace unicover
