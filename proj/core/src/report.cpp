#include "gbpq/report.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

namespace gbpq {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = line.find(sep);
        out.push_back(line.substr(0, pos));
        if (pos == std::string_view::npos) return out;
        line.remove_prefix(pos + 1);
    }
}

template <typename T>
bool parse(std::string_view tok, T &out) {
    if (tok.empty()) return false;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::string_view trim_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

}  // namespace

void write_result_csv(std::ostream &out, std::span<const PathQuery> queries, const BatchResult &result,
                      bool with_deviation) {
    if (queries.size() != result.answers.size()) throw std::invalid_argument("query and answer counts differ");
    out << kResultHeader << '\n';
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto &a = result.answers[i];
        out << i << ',' << queries[i].source << ',' << queries[i].dest << ',' << (a.answered() ? "ok" : "no_path")
            << ',';
        if (a.answered()) out << format_double(a.path->cost);
        out << ',';
        if (with_deviation && a.answered() && i < result.per_query_deviation.size())
            out << format_double(result.per_query_deviation[i]);
        out << ',' << to_string(a.kind) << ',';
        if (a.cluster) out << *a.cluster;
        out << ',';
        if (a.answered()) {
            const auto &nodes = a.path->nodes;
            for (std::size_t k = 0; k < nodes.size(); ++k) out << (k ? " " : "") << nodes[k];
        }
        out << '\n';
    }
}

std::vector<ResultRow> read_result_csv(std::istream &in, const std::string &name) {
    std::vector<ResultRow> rows;
    std::string line;
    std::size_t no = 0;
    if (!std::getline(in, line)) throw ParseError(name, 1, "missing header row");
    ++no;
    if (trim_cr(line) != kResultHeader) throw ParseError(name, no, "unexpected header (want result schema v1)");
    while (std::getline(in, line)) {
        ++no;
        const auto text = trim_cr(line);
        if (text.empty()) continue;
        const auto f = split(text, ',');
        if (f.size() != 9) throw ParseError(name, no, "expected 9 fields");
        ResultRow row;
        if (!parse(f[0], row.query) || !parse(f[1], row.endpoints.source) || !parse(f[2], row.endpoints.dest))
            throw ParseError(name, no, "bad query index or endpoints");
        row.answer = std::string(f[6]);
        if (!f[7].empty()) {
            std::size_t c = 0;
            if (!parse(f[7], c)) throw ParseError(name, no, "bad cluster index");
            row.cluster = c;
        }
        if (!f[5].empty()) {
            double dev = 0.0;
            if (!parse(f[5], dev)) throw ParseError(name, no, "bad deviation");
            row.deviation_percent = dev;
        }
        if (f[3] == "ok") {
            RoutePath p;
            if (!parse(f[4], p.cost)) throw ParseError(name, no, "bad cost");
            for (const auto tok : split(f[8], ' ')) {
                if (tok.empty()) continue;
                NodeId n = 0;
                if (!parse(tok, n)) throw ParseError(name, no, "bad node id in path");
                p.nodes.push_back(n);
            }
            row.path = std::move(p);
        } else if (f[3] != "no_path") {
            throw ParseError(name, no, "status must be ok or no_path");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_summary_csv(std::ostream &out, const std::string &mode, const BatchResult &r,
                       std::optional<double> aggregate_deviation) {
    const auto &s = r.cluster_stats;
    const auto &t = r.timings;
    const std::size_t n = r.answers.size();
    double dev_sum = 0.0;
    std::size_t dev_count = 0;
    for (std::size_t i = 0; i < n && i < r.per_query_deviation.size(); ++i) {
        if (r.answers[i].answered()) {
            dev_sum += r.per_query_deviation[i];
            ++dev_count;
        }
    }
    out << "key,value\n";
    out << "schema,gbpq-summary-v" << kResultSchemaVersion << '\n';
    out << "mode," << mode << '\n';
    out << "queries," << n << '\n';
    out << "answered," << (n - r.no_path_count) << '\n';
    out << "no_path," << r.no_path_count << '\n';
    out << "fallback_count," << r.fallback_count << '\n';
    out << "cluster_count," << s.cluster_count << '\n';
    out << "first_pass_clusters," << s.first_pass_clusters << '\n';
    out << "first_pass_unclustered," << s.first_pass_unclustered << '\n';
    out << "max_cluster_size," << (s.sizes.empty() ? 0 : *std::max_element(s.sizes.begin(), s.sizes.end())) << '\n';
    out << "mean_deviation_percent," << format_double(dev_count ? dev_sum / static_cast<double>(dev_count) : 0.0)
        << '\n';
    if (aggregate_deviation) out << "aggregate_deviation_percent," << format_double(*aggregate_deviation) << '\n';
    out << "time_qline_s," << format_double(t.qline) << '\n';
    out << "time_clustering_s," << format_double(t.clustering) << '\n';
    out << "time_region_search_s," << format_double(t.region_search) << '\n';
    out << "time_construction_s," << format_double(t.construction) << '\n';
    out << "time_total_s," << format_double(t.total) << '\n';
}

std::map<std::string, std::string> read_summary_csv(std::istream &in, const std::string &name) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto text = trim_cr(line);
        if (text.empty() || (no == 1 && text == "key,value")) continue;
        const auto comma = text.find(',');
        if (comma == std::string_view::npos) throw ParseError(name, no, "expected key,value");
        kv.emplace(std::string(text.substr(0, comma)), std::string(text.substr(comma + 1)));
    }
    return kv;
}

}  // namespace gbpq
