#include "cslrank/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cslrank/demos.hpp"
#include "cslrank/io.hpp"

namespace cslrank {

namespace {

// Runs a verb body, mapping library errors onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const RefutationError& e) {
    err << "refuted: " << e.what() << '\n';
    return kExitRefuted;
  } catch (const Error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
}

std::size_t max_rank_for(const MapSpec& spec, const Options& opt) {
  return opt.max_rank.value_or(std::min<std::size_t>({4, spec.source_dim(), spec.target_dim()}));
}

// Loads the map and rejects images outside the target algebra.
MapSpec load_map(const std::string& path) {
  MapSpec spec = map_from_json(read_json_file(path));
  const ValidationReport v = validate(spec);
  if (!v.ok) {
    std::string what = path + ": map leaves the target algebra";
    for (const auto& o : v.offending) {
      what += "; image of " + unit_label(o.from) + " has entry " + unit_label(o.entry);
    }
    for (const auto& p : v.problems) what += "; " + p;
    throw InputError(what);
  }
  return spec;
}

// Prints the counterexample and returns true when the map is refuted.
bool refuted_by_probes(const MapSpec& spec, const Options& opt, std::ostream& out) {
  const RankVerdict verdict = check_rank_preserving(spec, opt.trials, max_rank_for(spec, opt), opt.seed);
  if (!verdict.refuted()) {
    out << "rank check: probable (" << verdict.probes << " probes, seed " << opt.seed << ")\n";
    return false;
  }
  out << "rank check: REFUTED at stage " << verdict.stage << ": rank " << verdict.input_rank << " -> "
      << verdict.image_rank << '\n';
  out << "counterexample:\n" << verdict.counterexample->to_string() << '\n';
  out << "image:\n" << verdict.image->to_string() << '\n';
  return true;
}

void print_lines(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace

int run_analyze(const std::string& lattice_file, const Options&, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SubspaceLattice lattice = lattice_from_json(read_json_file(lattice_file));
    const MaskAlgebra algebra = mask(lattice);
    const InterestingFamily family = interesting_family(lattice);
    out << "lattice: n=" << lattice.ambient_dim() << ", " << lattice.size() << " elements after closure\n";
    for (const auto& e : lattice.elements()) out << "  " << e.to_string() << '\n';
    out << "interesting family (N, predecessor):\n";
    for (std::size_t k = 0; k < family.size(); ++k) {
      out << "  " << family.members[k].to_string() << "  " << family.predecessors[k].to_string() << '\n';
    }
    out << "mask (" << algebra.dimension() << " allowed entries):\n" << algebra.star_pattern();
    const bool cdl = validate_cdl(lattice);
    const bool span = span_check(lattice);
    out << "validate_cdl: " << (cdl ? "true" : "false") << '\n';
    out << "span_check: " << (span ? "true" : "false") << '\n';
    return cdl && span ? kExitOk : kExitRefuted;
  });
}

int run_classify(const std::string& map_file, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MapSpec spec = load_map(map_file);
    if (refuted_by_probes(spec, opt, out)) return kExitRefuted;
    PipelineResult r;
    r.classification = classify_all(spec, opt.parallel);
    r.decomposition = decompose(spec, r.classification);
    r.graph = chain_graph(spec, r.classification);
    r.cycles = cycle_check(r.graph);
    print_lines(out, describe_pipeline(r));
    out << classification_summary(r.classification, r.graph) << '\n';
    return r.cycles.ok ? kExitOk : kExitRefuted;
  });
}

int run_reconstruct(const std::string& map_file, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MapSpec spec = load_map(map_file);
    if (refuted_by_probes(spec, opt, out)) return kExitRefuted;
    const PipelineResult r = reconstruct(spec, opt.parallel);
    print_lines(out, describe_pipeline(r));
    if (!r.implementation) return kExitRefuted;
    const Json doc = implementation_to_json(*r.implementation);
    if (opt.out.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      write_json_file(opt.out, doc);
      out << "wrote " << opt.out << '\n';
    }
    return r.report && r.report->ok ? kExitOk : kExitRefuted;
  });
}

int run_verify(const std::string& map_file, const std::string& impl_file, const Options&, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const MapSpec spec = load_map(map_file);
    const Implementation impl =
        implementation_from_json(read_json_file(impl_file), spec.source_dim(), spec.target_dim());
    const VerifyReport v = verify(spec, impl);
    out << "units checked: " << v.units_checked << ", failing: " << v.failures.size() << '\n';
    for (const auto& u : v.failures) out << "  FAIL " << unit_label(u) << '\n';
    out << "rank U=" << v.u_rank << " V=" << v.v_rank << (v.injective ? " (injective)" : " (not injective)") << '\n';
    out << "image dimension " << v.image_dimension << "/" << v.target_dimension
        << (v.surjective() ? " (onto)" : " (not onto)") << '\n';
    out << "certificate: " << (v.certified ? "exact" : "none") << '\n';
    return v.ok ? kExitOk : kExitRefuted;
  });
}

int run_demo(const std::string& name, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> names{name};
    if (name == "all") names = demo_names();
    int code = kExitOk;
    for (const auto& n : names) {
      demo_spec(n);  // unknown names are input errors
      const DemoReport report = run_demo_report(n, opt.parallel);
      print_lines(out, report.lines);
      out << "demo " << n << ": " << (report.ok() ? "PASS" : "FAIL") << "\n\n";
      if (!report.ok()) code = kExitRefuted;
    }
    return code;
  });
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rank-preserving map analysis on commutative subspace lattice algebras"};
  app.require_subcommand(1);
  Options opt;
  std::size_t max_rank = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--trials", opt.trials, "random probes per family")->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--max-rank", max_rank, "largest probe rank (default min(4, n))");
    sub->add_option("--out", opt.out, "output path");
    sub->add_flag("--parallel", opt.parallel, "classify elements concurrently");
  };
  std::string first, second;
  auto* analyze = app.add_subcommand("analyze", "closure, interesting family and mask of a lattice file");
  analyze->add_option("lattice", first, "lattice file")->required();
  auto* classify = app.add_subcommand("classify", "rank check and element classification of a map file");
  classify->add_option("map", first, "map file")->required();
  auto* recon = app.add_subcommand("reconstruct", "recover implementing operators for a map file");
  recon->add_option("map", first, "map file")->required();
  auto* ver = app.add_subcommand("verify", "check an implementation file against a map file");
  ver->add_option("map", first, "map file")->required();
  ver->add_option("implementation", second, "implementation file")->required();
  auto* demo = app.add_subcommand("demo", "run a built-in example");
  demo->add_option("name", first, "a4-phi1, a4-phi2, nest-shift, ainf-diag, isolated-diag, mixed-blocks or all")
      ->required();
  for (auto* sub : {analyze, classify, recon, ver, demo}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  for (auto* sub : {analyze, classify, recon, ver, demo}) {
    if (sub->get_option("--max-rank")->count() > 0) opt.max_rank = max_rank;
  }

  if (analyze->parsed()) return run_analyze(first, opt, out, err);
  if (classify->parsed()) return run_classify(first, opt, out, err);
  if (recon->parsed()) return run_reconstruct(first, opt, out, err);
  if (ver->parsed()) return run_verify(first, second, opt, out, err);
  return run_demo(first, opt, out, err);
}

}  // namespace cslrank
