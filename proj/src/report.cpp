#include "catchup/report.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <ostream>

namespace catchup {

using nlohmann::ordered_json;

std::string file_digest(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string fmt_rate(const std::optional<double> &v)
{
    if (!v)
        return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
}

std::string fmt(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

ordered_json rate_json(const std::optional<double> &v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json manifest_json(const RunManifest &m)
{
    ordered_json flags = ordered_json::object();
    for (const auto &[k, v] : m.flags)
        flags[k] = v;
    return ordered_json{{"command", m.command},          {"flags", flags},
                        {"seed", m.seed},                {"input_digest", m.input_digest},
                        {"tool_version", m.tool_version}, {"timestamp", m.timestamp}};
}

void text_manifest(std::ostream &out, const RunManifest &m)
{
    out << "# catchup " << m.tool_version << '\n';
    out << "# command: " << m.command << '\n';
    out << "# flags:";
    for (const auto &[k, v] : m.flags)
        out << " --" << k << '=' << v;
    out << '\n';
    out << "# seed: " << m.seed << '\n';
    if (!m.input_digest.empty())
        out << "# input-digest: " << m.input_digest << '\n';
    out << "# timestamp: " << m.timestamp << '\n';
}

void machine_out(std::ostream &out, const RunManifest &m, const char *key, ordered_json payload)
{
    ordered_json doc{{"manifest", manifest_json(m)}, {key, std::move(payload)}};
    out << doc.dump(2) << '\n';
}

std::string triple_str(const std::array<int, 3> &t)
{
    return std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]);
}

} // namespace

void write_cases(std::ostream &out, Format format, const RunManifest &manifest, std::span<const RescuableCase> cases)
{
    if (format == Format::Machine) {
        ordered_json rows = ordered_json::array();
        for (const auto &c : cases)
            rows.push_back({{"case_id", c.case_id},
                            {"year", c.year},
                            {"region", c.region},
                            {"observed", c.observed},
                            {"missing_index", c.missing_index},
                            {"valid", c.valid}});
        machine_out(out, manifest, "cases", std::move(rows));
        return;
    }
    text_manifest(out, manifest);
    std::size_t valid = 0;
    for (const auto &c : cases)
        valid += c.valid ? 1 : 0;
    out << "rescuable: " << cases.size() << "  valid: " << valid << '\n';
    out << "case_id,year,region,observed,missing_index,valid\n";
    for (const auto &c : cases)
        out << c.case_id << ',' << c.year << ',' << c.region << ',' << triple_str(c.observed) << ','
            << c.missing_index << ',' << (c.valid ? "yes" : "no") << '\n';
}

void write_error_reports(std::ostream &out, Format format, const RunManifest &manifest,
                         std::span<const ErrorReport> reports)
{
    if (format == Format::Machine) {
        ordered_json rows = ordered_json::array();
        for (const auto &r : reports) {
            ordered_json row{{"model", r.model},
                             {"mpf", rate_json(r.mpf.mean())},
                             {"mfp", rate_json(r.mfp.mean())},
                             {"n_pass", r.n_pass},
                             {"n_fail", r.n_fail},
                             {"reps", r.reps},
                             {"mean_adjusted_r2", rate_json(r.mean_adjusted_r2())},
                             {"exclusions", {{"mpf", r.mpf.exclusions()}, {"mfp", r.mfp.exclusions()}}}};
            if (!r.per_rep_adjusted_r2.empty())
                row["degenerate_reps"] = r.degenerate_reps;
            if (r.group_mpf && r.group_mfp) {
                row["group_relative_mpf"] = rate_json(r.group_mpf->mean());
                row["group_relative_mfp"] = rate_json(r.group_mfp->mean());
            }
            if (r.unclassified > 0)
                row["unclassified"] = r.unclassified;
            rows.push_back(std::move(row));
        }
        machine_out(out, manifest, "reports", std::move(rows));
        return;
    }
    text_manifest(out, manifest);
    out << "model,mpf,mfp,n_pass,n_fail,reps,mean_adjusted_r2,excluded_mpf,excluded_mfp";
    const bool fidelity = !reports.empty() && reports.front().group_mpf.has_value();
    if (fidelity)
        out << ",group_mpf,group_mfp";
    out << '\n';
    for (const auto &r : reports) {
        out << r.model << ',' << fmt_rate(r.mpf.mean()) << ',' << fmt_rate(r.mfp.mean()) << ',' << r.n_pass << ','
            << r.n_fail << ',' << r.reps << ',' << (r.mean_adjusted_r2() ? fmt(*r.mean_adjusted_r2(), 6) : "-") << ','
            << r.mpf.exclusions() << ',' << r.mfp.exclusions();
        if (fidelity)
            out << ',' << fmt_rate(r.group_mpf->mean()) << ',' << fmt_rate(r.group_mfp->mean());
        out << '\n';
    }
    for (const auto &r : reports) {
        if (r.degenerate_reps > 0)
            out << "# warning: " << r.model << ": " << r.degenerate_reps
                << " repetition(s) had a rank-deficient design (minimum-norm fit)\n";
        if (r.unclassified > 0)
            out << "# warning: " << r.model << ": " << r.unclassified << " test case(s) had no neighbors\n";
    }
}

void write_decisions(std::ostream &out, Format format, const RunManifest &manifest,
                     std::span<const RescueDecision> decisions)
{
    if (format == Format::Machine) {
        ordered_json rows = ordered_json::array();
        for (const auto &d : decisions) {
            ordered_json row{{"case_id", d.rescue_case.case_id},
                             {"year", d.rescue_case.year},
                             {"region", d.rescue_case.region},
                             {"observed", d.rescue_case.observed},
                             {"engine", to_string(d.engine)},
                             {"reps", d.reps},
                             {"cohort_size", d.cohort_size},
                             {"verdict", to_string(d.verdict)}};
            if (d.verdict == Verdict::Undecidable) {
                row["reason"] = d.reason;
            } else {
                row["grade4p"] = d.grade4p;
                row["mean_estimate"] = d.mean_estimate();
                const auto modal = d.modal_estimate();
                row["modal_estimate"] = modal ? ordered_json(*modal) : ordered_json(nullptr);
            }
            rows.push_back(std::move(row));
        }
        machine_out(out, manifest, "decisions", std::move(rows));
        return;
    }
    text_manifest(out, manifest);
    out << "case_id,year,region,observed,engine,grade4p,verdict,mean_estimate,modal_estimate,cohort_size\n";
    for (const auto &d : decisions) {
        out << d.rescue_case.case_id << ',' << d.rescue_case.year << ',' << d.rescue_case.region << ','
            << triple_str(d.rescue_case.observed) << ',' << to_string(d.engine) << ',';
        if (d.verdict == Verdict::Undecidable) {
            out << "-," << to_string(d.verdict) << ",-,-," << d.cohort_size << '\n';
            out << "#   " << d.rescue_case.case_id << ": " << d.reason << '\n';
            continue;
        }
        const auto modal = d.modal_estimate();
        out << fmt(d.grade4p) << ',' << to_string(d.verdict) << ',' << fmt(d.mean_estimate()) << ','
            << (modal ? std::to_string(*modal) : "-") << ',' << d.cohort_size << '\n';
    }
}

void write_manifest_only(std::ostream &out, Format format, const RunManifest &manifest, const std::string &note)
{
    if (format == Format::Machine) {
        machine_out(out, manifest, "note", note);
        return;
    }
    text_manifest(out, manifest);
    out << note << '\n';
}

} // namespace catchup
