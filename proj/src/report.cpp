#include "qarith/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qarith/analysis.hpp"
#include "qarith/modexp.hpp"

namespace qarith {

namespace {

const std::vector<std::string>& columns() {
    static const std::vector<std::string> c = {
        "op_class",      "algorithm",       "n",         "logical_qubits", "t_count",
        "toffoli_count", "cnot_count",      "rotation_count", "depth",     "t_depth",
        "code_distance", "physical_qubits", "runtime_seconds", "num_factories"};
    return c;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::uint64_t parse_u64(std::string_view field, const std::string& column) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw std::invalid_argument("bad integer in column " + column + ": '" + std::string(field) + "'");
    }
    return v;
}

double parse_real(std::string_view field, const std::string& column) {
    const std::string s(field);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::invalid_argument("bad number in column " + column + ": '" + s + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<SweepRecord> parse_csv(std::string_view text) {
    std::vector<SweepRecord> rows;
    bool header = false;
    std::size_t lineno = 0;
    for (std::string_view line : split(text, '\n')) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header) {
            if (line != sweep_csv_header()) throw std::invalid_argument("CSV header does not match the sweep schema");
            header = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != columns().size()) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(columns().size()) + " fields, got " + std::to_string(f.size()));
        }
        const auto& c = columns();
        SweepRecord r;
        r.op_class = std::string(f[0]);
        r.algorithm = std::string(f[1]);
        r.n = parse_u64(f[2], c[2]);
        r.logical_qubits = parse_u64(f[3], c[3]);
        r.t_count = parse_u64(f[4], c[4]);
        r.toffoli_count = parse_u64(f[5], c[5]);
        r.cnot_count = parse_u64(f[6], c[6]);
        r.rotation_count = parse_u64(f[7], c[7]);
        r.depth = parse_u64(f[8], c[8]);
        r.t_depth = parse_u64(f[9], c[9]);
        r.code_distance = parse_u64(f[10], c[10]);
        r.physical_qubits = parse_u64(f[11], c[11]);
        r.runtime_seconds = parse_real(f[12], c[12]);
        r.num_factories = parse_u64(f[13], c[13]);
        rows.push_back(std::move(r));
    }
    if (!header) throw std::invalid_argument("empty input: no CSV header");
    return rows;
}

std::vector<SweepRecord> parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("JSON sweep input must be an array of objects");
    std::vector<SweepRecord> rows;
    try {
        for (const auto& o : j) {
            SweepRecord r;
            r.op_class = o.at("op_class").get<std::string>();
            r.algorithm = o.at("algorithm").get<std::string>();
            r.n = o.at("n").get<std::uint64_t>();
            r.logical_qubits = o.at("logical_qubits").get<std::uint64_t>();
            r.t_count = o.at("t_count").get<std::uint64_t>();
            r.toffoli_count = o.at("toffoli_count").get<std::uint64_t>();
            r.cnot_count = o.at("cnot_count").get<std::uint64_t>();
            r.rotation_count = o.at("rotation_count").get<std::uint64_t>();
            r.depth = o.at("depth").get<std::uint64_t>();
            r.t_depth = o.at("t_depth").get<std::uint64_t>();
            r.code_distance = o.at("code_distance").get<std::uint64_t>();
            r.physical_qubits = o.at("physical_qubits").get<std::uint64_t>();
            r.runtime_seconds = o.at("runtime_seconds").get<double>();
            r.num_factories = o.at("num_factories").get<std::uint64_t>();
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep record: ") + e.what());
    }
    return rows;
}

// Series per (op_class, algorithm) in order of first appearance.
std::vector<std::pair<SweepRecord, SweepSeries>> group(const std::vector<SweepRecord>& rows,
                                                       const std::string& metric) {
    std::vector<std::pair<SweepRecord, SweepSeries>> out;
    for (const auto& r : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) {
            return g.first.op_class == r.op_class && g.first.algorithm == r.algorithm;
        });
        if (it == out.end()) {
            out.push_back({r, SweepSeries{r.op_class + "/" + r.algorithm, {}}});
            it = std::prev(out.end());
        }
        it->second.points.emplace_back(r.n, record_metric(r, metric));
    }
    for (auto& [first, s] : out) {
        std::stable_sort(s.points.begin(), s.points.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        // Several factory counts per n (Pareto output): keep the first.
        s.points.erase(std::unique(s.points.begin(), s.points.end(),
                                   [](const auto& a, const auto& b) { return a.first == b.first; }),
                       s.points.end());
    }
    return out;
}

SweepSeries restrict_to(const SweepSeries& s, const std::vector<std::uint64_t>& ns) {
    SweepSeries out{s.label, {}};
    for (const auto& pt : s.points) {
        if (std::binary_search(ns.begin(), ns.end(), pt.first)) out.points.push_back(pt);
    }
    return out;
}

std::string fit_slope(const std::vector<SweepRecord>& rows, const std::string& metric) {
    std::ostringstream os;
    for (const auto& [first, s] : group(rows, metric)) {
        const PowerLaw fit = fit_power_law(s);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", fit.slope, fit.intercept);
        os << first.op_class << "," << first.algorithm << "," << buf << "\n";
    }
    return os.str();
}

std::string fit_tipping(const std::vector<SweepRecord>& rows, const std::string& metric) {
    const auto groups = group(rows, metric);
    if (groups.size() != 2) {
        throw std::invalid_argument("tipping mode needs exactly two algorithms, got " + std::to_string(groups.size()));
    }
    std::vector<std::uint64_t> a_ns, common;
    for (const auto& pt : groups[0].second.points) a_ns.push_back(pt.first);
    for (const auto& pt : groups[1].second.points) {
        if (std::binary_search(a_ns.begin(), a_ns.end(), pt.first)) common.push_back(pt.first);
    }
    if (common.empty()) throw std::invalid_argument("the two algorithms share no grid point");
    const SweepSeries a = restrict_to(groups[0].second, common);
    const SweepSeries b = restrict_to(groups[1].second, common);
    // A crossover needs the order to flip, so a series that is lower from the
    // first grid point on does not count.
    if (auto t = find_tipping_point(a, b); t && *t > common.front()) {
        return "tipping n=" + std::to_string(*t) + " (" + b.label + " below " + a.label + ")\n";
    }
    if (auto t = find_tipping_point(b, a); t && *t > common.front()) {
        return "tipping n=" + std::to_string(*t) + " (" + a.label + " below " + b.label + ")\n";
    }
    return "none\n";
}

std::string fit_window(const std::vector<SweepRecord>& rows, const std::string& metric) {
    std::vector<WindowSample> samples;
    for (const auto& r : rows) {
        if (r.op_class != to_string(OpClass::ModExp)) continue;
        ModExpAlgo a;
        try {
            a = parse_modexp(r.algorithm);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (a.kind != ModExpAlgo::Kind::LYYWindowed) continue;
        samples.push_back({r.n, a.window, record_metric(r, metric)});
    }
    if (samples.empty()) throw std::invalid_argument("window mode needs modexp LYYWindowed(<w>) rows");
    const WindowModel model = fit_window_model(samples);
    std::map<std::uint64_t, WindowSample> best;
    for (const auto& s : samples) {
        auto it = best.find(s.n);
        if (it == best.end() || s.cost < it->second.cost) best[s.n] = s;
    }
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "c1=%.6g\nc2=%.6g\n", model.c1, model.c2);
    os << buf;
    for (const auto& [n, s] : best) {
        os << "n=" << n << " model_w=" << model.argmin(n, std::min<std::uint64_t>(n, 16))
           << " formula_w=" << optimal_window(n) << " observed_w=" << s.w << "\n";
    }
    return os.str();
}

}  // namespace

LogicalCounts workload_counts(OpClass op, std::string_view algorithm, std::size_t n, const PhysicalParams& p) {
    return count_streaming(workload_builder(op, algorithm, n), p.error_budget).lowered;
}

SweepRecord make_record(OpClass op, std::string_view algorithm, std::size_t n, const LogicalCounts& c,
                        const std::optional<PhysicalEstimate>& est) {
    SweepRecord r;
    r.op_class = to_string(op);
    r.algorithm = std::string(algorithm);
    r.n = n;
    r.logical_qubits = c.qubits;
    r.t_count = c.t_count;
    r.toffoli_count = c.toffoli_count;
    r.cnot_count = c.cnot_count;
    r.rotation_count = c.rotation_count;
    r.depth = c.depth;
    r.t_depth = c.t_depth;
    if (est) {
        r.code_distance = est->code_distance;
        r.physical_qubits = est->physical_qubits;
        r.runtime_seconds = est->runtime_seconds;
        r.num_factories = est->num_factories;
    }
    return r;
}

std::vector<SweepRecord> sweep(OpClass op, const std::vector<std::string>& algorithms,
                               const std::vector<std::uint64_t>& grid, const PhysicalParams& p) {
    p.validate();
    // Resolve every point first so a bad name or width fails before any counting.
    std::vector<BuildFn> builds;
    for (const auto& a : algorithms) {
        for (std::uint64_t n : grid) builds.push_back(workload_builder(op, a, n));
    }
    std::vector<SweepRecord> rows;
    std::size_t k = 0;
    for (const auto& a : algorithms) {
        for (std::uint64_t n : grid) {
            const LogicalCounts c = count_streaming(builds[k++], p.error_budget).lowered;
            std::optional<PhysicalEstimate> est;
            try {
                est = estimate(c, p, c.t_count > 0 ? 1 : 0);
            } catch (const std::domain_error&) {
                est.reset();
            }
            rows.push_back(make_record(op, a, n, c, est));
        }
    }
    return rows;
}

std::vector<SweepRecord> pareto_records(OpClass op, std::string_view algorithm, std::size_t n,
                                        const PhysicalParams& p) {
    p.validate();
    const LogicalCounts c = workload_counts(op, algorithm, n, p);
    std::vector<SweepRecord> rows;
    for (const auto& e : pareto_frontier(c, p)) rows.push_back(make_record(op, algorithm, n, c, e));
    return rows;
}

const std::string& sweep_csv_header() {
    static const std::string h = [] {
        std::string s;
        for (const auto& c : columns()) s += (s.empty() ? "" : ",") + c;
        return s;
    }();
    return h;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
    out << sweep_csv_header() << "\n";
    for (const auto& r : rows) {
        out << r.op_class << "," << r.algorithm << "," << r.n << "," << r.logical_qubits << "," << r.t_count << ","
            << r.toffoli_count << "," << r.cnot_count << "," << r.rotation_count << "," << r.depth << ","
            << r.t_depth << "," << r.code_distance << "," << r.physical_qubits << ","
            << format_double(r.runtime_seconds) << "," << r.num_factories << "\n";
    }
}

void write_json(std::ostream& out, const std::vector<SweepRecord>& rows) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["op_class"] = r.op_class;
        o["algorithm"] = r.algorithm;
        o["n"] = r.n;
        o["logical_qubits"] = r.logical_qubits;
        o["t_count"] = r.t_count;
        o["toffoli_count"] = r.toffoli_count;
        o["cnot_count"] = r.cnot_count;
        o["rotation_count"] = r.rotation_count;
        o["depth"] = r.depth;
        o["t_depth"] = r.t_depth;
        o["code_distance"] = r.code_distance;
        o["physical_qubits"] = r.physical_qubits;
        o["runtime_seconds"] = r.runtime_seconds;
        o["num_factories"] = r.num_factories;
        j.push_back(std::move(o));
    }
    out << j.dump(2) << "\n";
}

std::vector<SweepRecord> parse_records(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') return parse_json(text);
    return parse_csv(text);
}

FitMode parse_fit_mode(std::string_view s) {
    if (s == "slope") return FitMode::Slope;
    if (s == "tipping") return FitMode::Tipping;
    if (s == "window") return FitMode::Window;
    throw std::invalid_argument("fit mode must be slope, tipping or window");
}

double record_metric(const SweepRecord& r, std::string_view metric) {
    if (metric == "logical_qubits") return double(r.logical_qubits);
    if (metric == "t_count") return double(r.t_count);
    if (metric == "toffoli_count") return double(r.toffoli_count);
    if (metric == "cnot_count") return double(r.cnot_count);
    if (metric == "rotation_count") return double(r.rotation_count);
    if (metric == "depth") return double(r.depth);
    if (metric == "t_depth") return double(r.t_depth);
    if (metric == "physical_qubits") return double(r.physical_qubits);
    if (metric == "runtime_seconds") return r.runtime_seconds;
    throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

std::string default_metric(FitMode mode) { return mode == FitMode::Tipping ? "toffoli_count" : "t_count"; }

std::string fit_report(const std::vector<SweepRecord>& rows, FitMode mode, const std::string& metric) {
    record_metric(SweepRecord{}, metric);
    if (rows.empty()) throw std::invalid_argument("no sweep rows to fit");
    switch (mode) {
        case FitMode::Slope: return fit_slope(rows, metric);
        case FitMode::Tipping: return fit_tipping(rows, metric);
        case FitMode::Window: return fit_window(rows, metric);
    }
    return {};
}

}  // namespace qarith
