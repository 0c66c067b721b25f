#include "epic/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "epic/config.hpp"

namespace epic {

namespace {

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

int max_aoi_of(const TickMetrics& tick) {
    int max_aoi = 0;
    for (int a : tick.agent_max_aoi) max_aoi = std::max(max_aoi, a);
    return max_aoi;
}

}  // namespace

std::string csv_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

AggregateStats aggregate_trials(const std::vector<TrialResult>& trials) {
    AggregateStats agg;
    std::vector<double> wce_means;
    std::vector<double> latency_means;
    std::vector<double> pooled;
    for (const TrialResult& t : trials) {
        wce_means.push_back(t.summary.wce_mean);
        latency_means.push_back(t.summary.latency_mean_ms);
        pooled.insert(pooled.end(), t.latency_samples.begin(), t.latency_samples.end());
    }
    agg.wce_mean = mean_of(wce_means);
    agg.wce_trialmean_std = sample_std(wce_means);
    agg.latency_mean_ms = mean_of(pooled);
    agg.latency_trialmean_std_ms = sample_std(latency_means);
    agg.latency_pooled_std_ms = sample_std(pooled);
    agg.latency_events = pooled.size();
    return agg;
}

std::string build_ticks_csv(const std::vector<TrialResult>& trials) {
    std::ostringstream out;
    out << "trial,step,scheme,wce,reaction_latency_ms,max_aoi\n";
    for (const TrialResult& t : trials) {
        for (const TickMetrics& tick : t.ticks) {
            out << t.summary.trial << ',' << tick.step << ',' << scheme_name(tick.scheme)
                << ',' << csv_number(tick.wce) << ',' << csv_number(tick.reaction_latency_ms)
                << ',' << max_aoi_of(tick) << '\n';
        }
    }
    return out.str();
}

namespace {

const char kSummaryHeader[] =
    "trial,scheme,t_up_steps,jitter_sigma_ms,seed,wce_mean,wce_std,latency_mean_ms,"
    "latency_std_ms,latency_trialmean_std_ms,latency_events\n";

void append_trial_row(std::ostringstream& out, const TrialSummary& s, int t_up,
                      double jitter_sigma) {
    out << s.trial << ',' << scheme_name(s.scheme) << ',' << t_up << ','
        << csv_number(jitter_sigma) << ',' << s.seed << ',' << csv_number(s.wce_mean) << ','
        << csv_number(s.wce_std) << ',' << csv_number(s.latency_mean_ms) << ','
        << csv_number(s.latency_std_ms) << ",nan," << s.latency_events << '\n';
}

void append_aggregate_row(std::ostringstream& out, const std::vector<TrialResult>& trials,
                          Scheme scheme, int t_up, double jitter_sigma,
                          std::uint64_t master_seed) {
    const AggregateStats agg = aggregate_trials(trials);
    out << "-1," << scheme_name(scheme) << ',' << t_up << ',' << csv_number(jitter_sigma)
        << ',' << master_seed << ',' << csv_number(agg.wce_mean) << ','
        << csv_number(agg.wce_trialmean_std) << ',' << csv_number(agg.latency_mean_ms) << ','
        << csv_number(agg.latency_pooled_std_ms) << ','
        << csv_number(agg.latency_trialmean_std_ms) << ',' << agg.latency_events << '\n';
}

}  // namespace

std::string build_summary_csv(const std::vector<TrialResult>& trials,
                              const ScenarioConfig& config) {
    std::ostringstream out;
    out << kSummaryHeader;
    for (const TrialResult& t : trials) {
        append_trial_row(out, t.summary, config.link.t_up_steps, config.link.jitter_sigma_ms);
    }
    append_aggregate_row(out, trials, config.scheme, config.link.t_up_steps,
                         config.link.jitter_sigma_ms, config.master_seed);
    return out.str();
}

std::string build_sweep_csv(const std::vector<SweepCell>& cells, const std::string& parameter,
                            const ScenarioConfig& config) {
    std::ostringstream out;
    out << "parameter,value,scheme,trial,seed,wce_mean,wce_std,latency_mean_ms,"
           "latency_std_ms,latency_trialmean_std_ms,latency_events\n";
    for (const SweepCell& cell : cells) {
        for (const TrialResult& t : cell.trials) {
            out << parameter << ',' << csv_number(cell.value) << ','
                << scheme_name(cell.scheme) << ',' << t.summary.trial << ',' << t.summary.seed
                << ',' << csv_number(t.summary.wce_mean) << ','
                << csv_number(t.summary.wce_std) << ','
                << csv_number(t.summary.latency_mean_ms) << ','
                << csv_number(t.summary.latency_std_ms) << ",nan,"
                << t.summary.latency_events << '\n';
        }
        const AggregateStats agg = aggregate_trials(cell.trials);
        out << parameter << ',' << csv_number(cell.value) << ',' << scheme_name(cell.scheme)
            << ",-1," << config.master_seed << ',' << csv_number(agg.wce_mean) << ','
            << csv_number(agg.wce_trialmean_std) << ',' << csv_number(agg.latency_mean_ms)
            << ',' << csv_number(agg.latency_pooled_std_ms) << ','
            << csv_number(agg.latency_trialmean_std_ms) << ',' << agg.latency_events << '\n';
    }
    return out.str();
}

std::string render_run_table(const std::vector<TrialResult>& trials,
                             const ScenarioConfig& config) {
    std::ostringstream out;
    out << "scheme=" << scheme_name(config.scheme) << " t_up=" << config.link.t_up_steps
        << " jitter_sigma_ms=" << csv_number(config.link.jitter_sigma_ms)
        << " trials=" << config.trials << "\n";
    out << "trial  wce_mean  wce_std  latency_mean_ms  latency_std_ms  latency_events\n";
    for (const TrialResult& t : trials) {
        const TrialSummary& s = t.summary;
        out << s.trial << "  " << csv_number(s.wce_mean) << "  " << csv_number(s.wce_std)
            << "  " << csv_number(s.latency_mean_ms) << "  " << csv_number(s.latency_std_ms)
            << "  " << s.latency_events << "\n";
    }
    const AggregateStats agg = aggregate_trials(trials);
    out << "aggregate  wce_mean=" << csv_number(agg.wce_mean)
        << " wce_trialmean_std=" << csv_number(agg.wce_trialmean_std)
        << " latency_mean_ms=" << csv_number(agg.latency_mean_ms)
        << " latency_pooled_std_ms=" << csv_number(agg.latency_pooled_std_ms)
        << " latency_trialmean_std_ms=" << csv_number(agg.latency_trialmean_std_ms) << "\n";
    return out.str();
}

std::string render_sweep_table(const std::vector<SweepCell>& cells,
                               const std::string& parameter) {
    std::ostringstream out;
    out << parameter
        << "  scheme  wce_mean (+- trialmean_std)  latency_mean_ms (+- trialmean_std)\n";
    for (const SweepCell& cell : cells) {
        const AggregateStats agg = aggregate_trials(cell.trials);
        out << csv_number(cell.value) << "  " << scheme_name(cell.scheme) << "  "
            << csv_number(agg.wce_mean) << " (+- " << csv_number(agg.wce_trialmean_std)
            << ")  " << csv_number(agg.latency_mean_ms) << " (+- "
            << csv_number(agg.latency_trialmean_std_ms) << ")\n";
    }
    return out.str();
}

std::string build_manifest(const ScenarioConfig& config, const std::string& tool_version,
                           const std::string& timestamp_utc,
                           const std::vector<std::string>& output_files) {
    std::ostringstream out;
    out << "# epic-sim run manifest; reloads as a configuration file\n";
    out << "# tool_version: " << tool_version << "\n";
    out << "# created_utc: " << timestamp_utc << "\n";
    out << "# outputs:";
    for (const std::string& f : output_files) out << ' ' << f;
    out << "\n";
    out << serialize_config(config);
    return out.str();
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace epic
