// Copyright 2026 The aoi-edge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aoi/commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

#include "aoi/bounds.hpp"
#include "aoi/config_io.hpp"
#include "aoi/region.hpp"
#include "aoi/simulator.hpp"
#include "aoi/sweep.hpp"
#include "aoi/validation.hpp"

namespace aoi {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string verdict_header() {
  return "in_superset,in_subset,epsilon,superset_slack,subset_slack";
}

std::string verdict_row(const RegionVerdict& v) {
  return std::string(v.in_superset ? "1" : "0") + ',' +
         (v.in_subset ? "1" : "0") + ',' +
         (v.epsilon ? fmt(*v.epsilon) : std::string("nan")) + ',' +
         fmt(v.superset_slack) + ',' + fmt(v.subset_slack);
}

void print_verdict(std::ostream& err, const SystemConfig& c) {
  err << verdict_header() << '\n'
      << verdict_row(evaluate_region(c.lambda, c.N, current_khat(c))) << '\n';
}

// Maps library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InfeasiblePolicyError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

// Writes to --out when given, otherwise to `fallback`.
int with_output(const CommandOptions& o, std::ostream& fallback,
                const std::function<int(std::ostream&)>& body) {
  if (o.out.empty()) return body(fallback);
  std::ofstream file(o.out);
  if (!file) throw ConfigError("cannot open output file '" + o.out + "'");
  return body(file);
}

LoadedConfig load_with_overrides(const CommandOptions& o) {
  if (o.config_path.empty()) throw ConfigError("--config is required");
  LoadedConfig cfg = load_config(o.config_path);
  if (o.V) cfg.system.V = *o.V;
  if (o.policy) cfg.policy.kind = parse_policy_kind(*o.policy);
  validate(cfg.system);
  return cfg;
}

RunConfig run_config(const CommandOptions& o) {
  RunConfig rc = RunConfig::with_horizon(o.frames.value_or(10'000), o.seed);
  if (o.warmup) rc.warmup = *o.warmup;
  rc.validate();
  return rc;
}

}  // namespace

int cmd_simulate(const CommandOptions& o, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const LoadedConfig cfg = load_with_overrides(o);
    if (!cfg.has_lambda) throw ConfigError("simulate needs lambda");
    const RunConfig rc = run_config(o);
    std::unique_ptr<Policy> policy;
    try {
      policy = make_policy(cfg.system, cfg.policy);
    } catch (const InfeasiblePolicyError&) {
      print_verdict(err, cfg.system);
      throw;
    }
    std::ofstream trace_file;
    TraceSink sink;
    if (!o.trace.empty()) {
      trace_file.open(o.trace);
      if (!trace_file) throw ConfigError("cannot open trace file '" + o.trace + "'");
      trace_file << trace_csv_header() << '\n';
      sink = csv_trace_sink(trace_file);
    }
    const MetricsReport report = run(cfg.system, rc, *policy, sink);
    return with_output(o, out, [&](std::ostream& os) {
      os << report_csv_header() << '\n' << report_csv_row(report) << '\n';
      return kExitOk;
    });
  });
}

int cmd_sweep(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedConfig cfg = load_with_overrides(o);
    SweepSpec spec;
    spec.variable = parse_sweep_variable(o.variable);
    spec.grid = o.grid;
    spec.seeds = o.seeds;
    spec.master_seed = o.seed;
    spec.jobs = o.jobs;
    const RunConfig rc = run_config(o);
    spec.frames = rc.frames;
    spec.warmup = rc.warmup;
    if (o.policies.empty()) {
      spec.policies.push_back(cfg.policy);
    } else {
      for (const auto& name : o.policies) {
        PolicySettings p = cfg.policy;
        p.kind = parse_policy_kind(name);
        spec.policies.push_back(p);
      }
    }
    const auto rows = run_sweep(cfg.system, cfg.has_lambda, spec);
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        err << "note: " << to_string(r.policy) << " at " << fmt(r.grid_value)
            << " skipped: " << r.error << '\n';
      }
    }
    return with_output(o, out, [&](std::ostream& os) {
      write_sweep_csv(os, rows, spec.frames);
      return kExitOk;
    });
  });
}

int cmd_region(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedConfig cfg = load_with_overrides(o);
    const SystemConfig& c = cfg.system;
    const RegionVerdict v = evaluate_region(c.lambda, c.N, current_khat(c));
    return with_output(o, out, [&](std::ostream& os) {
      os << verdict_header() << '\n' << verdict_row(v) << '\n';
      return kExitOk;
    });
  });
}

int cmd_bounds(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedConfig cfg = load_with_overrides(o);
    const SystemConfig& c = cfg.system;
    const Count khat = current_khat(c);
    if (!in_subset(c.lambda, c.N, khat)) {
      print_verdict(err, c);
      throw InfeasiblePolicyError("bounds need lambda inside the subset region");
    }
    std::vector<double> grid = o.grid;
    if (grid.empty()) grid.push_back(c.V);
    return with_output(o, out, [&](std::ostream& os) {
      os << "V,C,V0,epsilon,aoi_bound,delay_bound\n";
      for (double V : grid) {
        const BoundReport b = evaluate_bounds(c.lambda, c.N, khat, V);
        os << fmt(b.V) << ',' << fmt(b.C) << ',' << fmt(b.V0) << ','
           << fmt(b.epsilon) << ',' << fmt(b.aoi_bound) << ','
           << fmt(b.delay_bound) << '\n';
      }
      return kExitOk;
    });
  });
}

int cmd_validate(const CommandOptions& o, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    ValidationOptions vo;
    vo.seed = o.seed;
    vo.corrupt_dp = o.inject_fault;
    const auto results = run_validation(vo);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.ok();
    return with_output(o, out, [&](std::ostream& os) {
      print_campaigns(os, results);
      return ok ? kExitOk : kExitInternal;
    });
  });
}

}  // namespace aoi
