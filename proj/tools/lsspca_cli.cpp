#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "lsspca/datasets.hpp"
#include "lsspca/metrics.hpp"
#include "lsspca/search_bb.hpp"
#include "lsspca/search_be.hpp"
#include "lsspca/solver.hpp"

namespace {

using namespace lsspca;

struct InputOptions {
  std::string input;
  std::string kind = "correlation";
  bool data = false;
  bool standardize = true;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.input,
                  "fixture key (zou, zou-analytic, pitprops) or CSV path")
      ->required();
  cmd->add_option("--kind", in.kind, "matrix CSV kind: correlation or covariance")
      ->check(CLI::IsMember({"correlation", "covariance"}));
  cmd->add_flag("--data", in.data, "treat the CSV as an n x p data table");
  cmd->add_flag("--standardize,!--no-standardize", in.standardize,
                "standardize data columns (data mode only)");
}

CovarianceMatrix load_input(const InputOptions& in) {
  if (in.input == "zou" || in.input == "zou-analytic" || in.input == "pitprops")
    return fixture_by_name(in.input).matrix;
  if (in.data) return read_data_csv(in.input, in.standardize);
  return read_matrix_csv(
      in.input, in.kind == "covariance" ? MatrixKind::covariance : MatrixKind::correlation);
}

int parse_int(const std::string& text) {
  try {
    size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw InputError("not an integer: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("not an integer: '" + text + "'");
  }
}

// "4,7,8,10" with 1-based variable numbers, as in the published tables
IndexSet parse_start_set(const std::string& text) {
  std::vector<int> idx;
  std::stringstream is(text);
  std::string field;
  while (std::getline(is, field, ',')) {
    const int v = parse_int(field);
    if (v < 1) throw InputError("variable numbers are 1-based");
    idx.push_back(v - 1);
  }
  return IndexSet(std::move(idx));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

struct OutputOptions {
  std::string summary_csv;
  std::string loadings_csv_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--csv", out.summary_csv, "write the summary table as CSV");
  cmd->add_option("--loadings-csv", out.loadings_csv_path, "write the loadings matrix as CSV");
}

void emit(const ComponentSet& set, const OutputOptions& out) {
  const SummaryTable table = summarize(set);
  std::cout << render_text(table) << "\n" << loadings_text(set);
  if (!out.summary_csv.empty()) write_file(out.summary_csv, render_csv(table));
  if (!out.loadings_csv_path.empty()) write_file(out.loadings_csv_path, loadings_csv(set));
}

std::string trace_csv(const std::vector<TrimTrace>& traces) {
  std::ostringstream os;
  os << "component,iteration,removed,magnitude,vexp_after,cardinality_after,stop_reason\n";
  for (size_t j = 0; j < traces.size(); ++j) {
    const TrimTrace& trace = traces[j];
    for (size_t it = 0; it < trace.steps.size(); ++it) {
      const TrimStep& step = trace.steps[it];
      for (size_t k = 0; k < step.removed.size(); ++k) {
        os << (j + 1) << "," << (it + 1) << "," << (step.removed[k] + 1) << ","
           << std::setprecision(17) << step.magnitudes[k] << "," << step.vexp_after << ","
           << step.cardinality_after << "," << to_string(trace.stop_reason) << "\n";
      }
    }
    if (trace.steps.empty())
      os << (j + 1) << ",0,,,,," << to_string(trace.stop_reason) << "\n";
  }
  return os.str();
}

struct BbOptions {
  std::vector<int> cards;
  std::string mode = "uncorrelated";
  std::vector<std::string> start_sets;
  bool order_variables = false;
  int threads = 1;
  double budget = 1e6;
};

void add_bb_options(CLI::App* cmd, BbOptions& bb) {
  cmd->add_option("--cards", bb.cards, "per-component cardinalities, e.g. --cards 4 4")
      ->required()
      ->delimiter(',');
  cmd->add_option("--mode", bb.mode, "uncorrelated, correlated, or orthogonal")
      ->check(CLI::IsMember({"uncorrelated", "correlated", "orthogonal"}));
  cmd->add_option("--start-set", bb.start_sets,
                  "restrict component j to these variables (repeatable, 1-based)");
  cmd->add_flag("--order-variables", bb.order_variables, "presort variables before branching");
  cmd->add_option("--threads", bb.threads, "worker threads for the search")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget", bb.budget, "max subsets for the exhaustive search");
}

SearchConfig to_search_config(const BbOptions& bb) {
  SearchConfig cfg;
  cfg.cardinalities = bb.cards;
  cfg.mode = mode_from_string(bb.mode);
  for (const std::string& s : bb.start_sets) cfg.start_sets.push_back(parse_start_set(s));
  cfg.order_variables = bb.order_variables;
  cfg.threads = bb.threads;
  cfg.budget = bb.budget;
  return cfg;
}

ComponentSet run_bb(const CovarianceMatrix& S, const BbOptions& bb) {
  return sequential_fit(S, to_search_config(bb));
}

ComponentSet run_exhaustive(const CovarianceMatrix& S, const BbOptions& bb) {
  const SearchConfig cfg = to_search_config(bb);
  ComponentSet set(S);
  SolveContext ctx = SolveContext::initial(S, cfg.mode);
  for (int c : cfg.cardinalities) {
    SearchResult result = exhaustive_search(ctx, c, cfg);
    ctx = ctx.with(result.component);
    set.add(std::move(result.component));
  }
  return set;
}

struct BeOptions {
  int d = 1;
  std::vector<double> tau{0.0};
  std::vector<int> min_card{1};
  std::vector<double> max_loss;
  double min_total_vexp = -1.0;
  int batch = 1;
  std::string mode = "correlated";
  std::string norm = "l1";
  std::vector<std::string> start_sets;
  std::string trace_csv_path;
};

void add_be_options(CLI::App* cmd, BeOptions& be) {
  cmd->add_option("--d", be.d, "maximum number of components");
  cmd->add_option("--tau", be.tau, "per-component trim threshold in [0,1]")->delimiter(',');
  cmd->add_option("--min-card", be.min_card, "per-component minimum cardinality")->delimiter(',');
  cmd->add_option("--max-loss", be.max_loss,
                  "per-component maximum relative loss of explained variance, in [0,1]")
      ->delimiter(',');
  cmd->add_option("--min-total-vexp", be.min_total_vexp,
                  "stop adding components once this fraction of total variance is explained");
  cmd->add_option("--batch", be.batch, "loadings trimmed per iteration")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", be.mode, "uncorrelated, correlated, or orthogonal")
      ->check(CLI::IsMember({"uncorrelated", "correlated", "orthogonal"}));
  cmd->add_option("--norm", be.norm, "threshold normalization: l1 (contribution) or l2")
      ->check(CLI::IsMember({"l1", "l2"}));
  cmd->add_option("--start-set", be.start_sets,
                  "start component j from these variables (repeatable, 1-based)");
  cmd->add_option("--trace-csv", be.trace_csv_path, "write the elimination trace as CSV");
}

TrimConfig to_trim_config(const BeOptions& be) {
  TrimConfig cfg;
  cfg.d = be.d;
  if (be.min_total_vexp >= 0) cfg.mv = be.min_total_vexp;
  cfg.mode = mode_from_string(be.mode);
  cfg.norm = be.norm == "l2" ? TrimNorm::l2 : TrimNorm::l1_contribution;
  cfg.batch = be.batch;
  cfg.tau = be.tau;
  cfg.min_cardinality = be.min_card;
  for (double loss : be.max_loss) cfg.max_relative_loss.push_back(loss);
  for (const std::string& s : be.start_sets) cfg.start_sets.push_back(parse_start_set(s));
  cfg.validate();
  return cfg;
}

int dispatch(CLI::App& app, int argc, char** argv) {
  InputOptions in_pca, in_bb, in_ex, in_be, in_sweep, in_cmp, in_bench;
  OutputOptions out_pca, out_bb, out_ex, out_be;
  BbOptions bb, ex, cmp_bb;
  BeOptions be, bench_be;
  int pca_d = 0;
  std::string sweep_cards = "4..7", sweep_csv, cmp_csv;
  InputOptions in_cmp2;
  std::string bench_command = "pca";
  int bench_reps = 3, bench_synth_p = 0;
  std::string bench_csv;
  BbOptions bench_bb;

  CLI::App* pca = app.add_subcommand("pca", "full principal component analysis baseline");
  add_input_options(pca, in_pca);
  add_output_options(pca, out_pca);
  pca->add_option("--d", pca_d, "number of components (default: all)");

  CLI::App* bbcmd = app.add_subcommand("bb", "branch-and-bound sparse components");
  add_input_options(bbcmd, in_bb);
  add_output_options(bbcmd, out_bb);
  add_bb_options(bbcmd, bb);

  CLI::App* excmd = app.add_subcommand("exhaustive", "exhaustive-search sparse components");
  add_input_options(excmd, in_ex);
  add_output_options(excmd, out_ex);
  add_bb_options(excmd, ex);

  CLI::App* becmd = app.add_subcommand("be", "backward-elimination sparse components");
  add_input_options(becmd, in_be);
  add_output_options(becmd, out_be);
  add_be_options(becmd, be);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "explained variance of every support against the plain submatrix eigenvector");
  add_input_options(sweep, in_sweep);
  sweep->add_option("--cards", sweep_cards, "cardinality range, e.g. 4..7");
  sweep->add_option("--csv", sweep_csv, "write the sweep as CSV");

  CLI::App* cmp = app.add_subcommand("compare", "sparse components against the PCA baseline");
  add_input_options(cmp, in_cmp);
  add_bb_options(cmp, cmp_bb);
  cmp->add_option("--csv", cmp_csv, "write the comparison as CSV");

  CLI::App* bench = app.add_subcommand("bench", "timing harness");
  add_input_options(bench, in_bench);
  bench->add_option("--command", bench_command, "command to time: pca, bb, or be")
      ->check(CLI::IsMember({"pca", "bb", "be"}));
  bench->add_option("--reps", bench_reps, "repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_csv, "write timings as CSV");
  add_be_options(bench, bench_be);
  bench->add_option("--cards", bench_bb.cards, "cardinalities for the bb command")->delimiter(',');

  app.require_subcommand(1);
  app.parse(argc, argv);

  if (pca->parsed()) {
    CovarianceMatrix S = load_input(in_pca);
    emit(full_pca(S, pca_d > 0 ? pca_d : S.dim()), out_pca);
    return 0;
  }
  if (bbcmd->parsed()) {
    emit(run_bb(load_input(in_bb), bb), out_bb);
    return 0;
  }
  if (excmd->parsed()) {
    emit(run_exhaustive(load_input(in_ex), ex), out_ex);
    return 0;
  }
  if (becmd->parsed()) {
    CovarianceMatrix S = load_input(in_be);
    auto [set, traces] = backward_eliminate(S, to_trim_config(be));
    emit(set, out_be);
    if (!be.trace_csv_path.empty()) write_file(be.trace_csv_path, trace_csv(traces));
    return 0;
  }
  if (sweep->parsed()) {
    CovarianceMatrix S = load_input(in_sweep);
    int lo = 0, hi = 0;
    const auto sep = sweep_cards.find("..");
    if (sep == std::string::npos) {
      lo = hi = parse_int(sweep_cards);
    } else {
      lo = parse_int(sweep_cards.substr(0, sep));
      hi = parse_int(sweep_cards.substr(sep + 2));
    }
    if (lo < 1 || hi < lo || hi > S.dim()) throw InputError("bad cardinality range");

    std::ostringstream os;
    os << "cardinality,support,vexp_sparse,vexp_submatrix_pc\n";
    SolveContext ctx = SolveContext::initial(S, Mode::uncorrelated);
    for (int c = lo; c <= hi; ++c) {
      std::vector<int> pick(c);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        IndexSet ind(pick);
        std::ostringstream support;
        for (int k = 0; k < c; ++k) support << (k ? " " : "") << (pick[k] + 1);
        try {
          const SparseComponent a = solve_on_support(ctx, ind);
          const SparseComponent b = submatrix_pc(S, ind);
          os << c << "," << support.str() << "," << std::setprecision(17) << a.vexp << ","
             << b.vexp << "\n";
        } catch (const NumericalError&) {
          os << c << "," << support.str() << ",,\n";
        }
        int k = c - 1;
        while (k >= 0 && pick[k] == S.dim() - c + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int m = k + 1; m < c; ++m) pick[m] = pick[m - 1] + 1;
      }
    }
    if (sweep_csv.empty())
      std::cout << os.str();
    else
      write_file(sweep_csv, os.str());
    return 0;
  }
  if (cmp->parsed()) {
    CovarianceMatrix S = load_input(in_cmp);
    ComponentSet sparse = run_bb(S, cmp_bb);
    ComponentSet baseline = full_pca(S, sparse.size());
    ComparisonReport report =
        compare({summarize(sparse), summarize(baseline)}, {"sparse", "pca"});
    std::cout << render_text(report);
    if (!cmp_csv.empty()) write_file(cmp_csv, render_csv(report));
    return 0;
  }
  if (bench->parsed()) {
    CovarianceMatrix S = load_input(in_bench);
    std::vector<double> seconds;
    for (int r = 0; r < bench_reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      if (bench_command == "pca") {
        full_pca(S, S.dim());
      } else if (bench_command == "bb") {
        BbOptions opts = bench_bb;
        if (opts.cards.empty()) opts.cards = {2};
        run_bb(S, opts);
      } else {
        backward_eliminate(S, to_trim_config(bench_be));
      }
      const auto t1 = std::chrono::steady_clock::now();
      seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    const double mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / seconds.size();
    std::ostringstream os;
    os << "rep,seconds\n";
    for (size_t r = 0; r < seconds.size(); ++r)
      os << (r + 1) << "," << std::setprecision(17) << seconds[r] << "\n";
    std::cout << "command=" << bench_command << " reps=" << bench_reps << " mean_seconds="
              << mean << " seconds_per_dim=" << mean / S.dim() << "\n";
    if (!bench_csv.empty()) write_file(bench_csv, os.str());
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"least-squares sparse principal component analysis"};
  try {
    return dispatch(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
