#include "fsched/evaluation.hpp"

#include <exception>

#include "fsched/csv.hpp"

namespace fsched {

namespace {

double average(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

const char* const kVariants[] = {"Original", "MDM", "TSM"};

}  // namespace

RelativeReduction compute_metrics(double original, double mdm, double tsm) {
  RelativeReduction rr;
  if (original > 0.0) rr.over_original = 100.0 * (original - tsm) / original;
  if (mdm > 0.0) rr.over_mdm = 100.0 * (mdm - tsm) / mdm;
  return rr;
}

std::vector<Scenario> test_scenarios(const ConnectionNetwork& net, const SimulationConfig& config) {
  if (config.test.seed == config.training_seed)
    throw std::invalid_argument("test seed must differ from the training seed");
  config.test.validate();
  return sample_scenarios(config.test, select_flights(net, config.test.strategy), net.num_flights());
}

double simulate_delay(const ConnectionNetwork& net, std::span<const Minutes> shift, const Scenario& scenario,
                      const SimulationConfig& config) {
  const auto adjusted = build_network(adjust_schedule(net, shift, config.reschedule_limit));
  const std::vector<double> none(net.num_flights(), 0.0);
  const auto res = solve_recourse_mip(adjusted, scenario, none, config.recourse);
  double total = 0.0;
  for (double z : res.excess) total += z;
  return total;
}

ComparisonReport run_simulation(const ConnectionNetwork& net, std::span<const Minutes> x_mdm,
                                std::span<const Minutes> x_tsm, const SimulationConfig& config) {
  const auto tests = test_scenarios(net, config);
  const std::vector<Minutes> zero(net.num_flights(), 0);
  const std::span<const Minutes> shifts[] = {zero, x_mdm, x_tsm};
  for (int v = 1; v < 3; ++v)
    if (static_cast<int>(shifts[v].size()) != net.num_flights())
      throw std::invalid_argument(std::string(kVariants[v]) + " reschedule has the wrong length");

  const int n = static_cast<int>(tests.size());
  std::vector<double> values(3 * n);
  std::vector<std::exception_ptr> errors(3 * n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, config.workers))
  for (int task = 0; task < 3 * n; ++task) {
    const int v = task / n, w = task % n;
    const std::string where = std::string(kVariants[v]) + " scenario " + std::to_string(w) + ": ";
    try {
      values[task] = simulate_delay(net, shifts[v], tests[w], config);
    } catch (const DeskScaleError& e) {
      errors[task] = std::make_exception_ptr(DeskScaleError(where + e.what()));
    } catch (const SolverError& e) {
      errors[task] = std::make_exception_ptr(SolverError(where + e.what()));
    } catch (...) {
      errors[task] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ComparisonReport r;
  r.original.assign(values.begin(), values.begin() + n);
  r.mdm.assign(values.begin() + n, values.begin() + 2 * n);
  r.tsm.assign(values.begin() + 2 * n, values.end());
  r.avg_original = average(r.original);
  r.avg_mdm = average(r.mdm);
  r.avg_tsm = average(r.tsm);
  r.rr = compute_metrics(r.avg_original, r.avg_mdm, r.avg_tsm);
  return r;
}

std::string scenario_csv(const ComparisonReport& report) {
  std::string out = csv::row({"variant", "scenarioIdx", "totalPropDelayMin"});
  const std::vector<double>* cols[] = {&report.original, &report.mdm, &report.tsm};
  for (int v = 0; v < 3; ++v)
    for (std::size_t w = 0; w < cols[v]->size(); ++w)
      out += csv::row({kVariants[v], std::to_string(w), csv::number((*cols[v])[w])});
  return out;
}

std::string summary_header() {
  return csv::row({"Instance", "Original", "MDM", "TSM", "RR_over_Original", "RR_over_MDM"});
}

std::string summary_row(const std::string& instance, const ComparisonReport& report) {
  return csv::row({instance, csv::fixed(report.avg_original, 2), csv::fixed(report.avg_mdm, 2),
                   csv::fixed(report.avg_tsm, 2), csv::fixed(report.rr.over_original, 2),
                   csv::fixed(report.rr.over_mdm, 2)});
}

}  // namespace fsched
