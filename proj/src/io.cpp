#include "qsh/io.hpp"

#include "qsh/errors.hpp"
#include "qsh/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qsh::io {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string cleaned;
    for (char c : line) {
        if (c == '#') break;
        cleaned += (c == ',') ? ' ' : c;
    }
    std::istringstream is(cleaned);
    std::vector<std::string> tokens;
    std::string t;
    while (is >> t) tokens.push_back(t);
    return tokens;
}

std::vector<std::pair<int, std::vector<std::string>>> data_lines(const std::string& text) {
    std::vector<std::pair<int, std::vector<std::string>>> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (!tokens.empty()) out.emplace_back(lineno, std::move(tokens));
    }
    return out;
}

Backend infer_backend(const std::vector<std::pair<int, std::vector<std::string>>>& rows) {
    bool fractional = false, floating = false;
    for (const auto& [lineno, tokens] : rows)
        for (const auto& t : tokens) {
            if (t == "inf" || t == "+inf") continue;
            if (t.find('/') != std::string::npos) fractional = true;
            if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
                t.find('E') != std::string::npos)
                floating = true;
        }
    if (fractional) return Backend::Rat;
    if (floating) return Backend::Flt;
    return Backend::Int;
}

} // namespace

SpacePtr parse_matrix(const std::string& text, std::optional<Backend> forced, double tau) {
    auto rows = data_lines(text);
    if (rows.empty()) throw parse_error("no matrix rows", 1);
    const Backend backend = forced ? *forced : infer_backend(rows);
    const size_t n = rows.size();
    std::vector<xreal> entries;
    entries.reserve(n * n);
    for (const auto& [lineno, tokens] : rows) {
        if (tokens.size() != n)
            throw parse_error("expected " + std::to_string(n) + " entries, found " +
                                  std::to_string(tokens.size()),
                              lineno);
        for (size_t c = 0; c < tokens.size(); ++c) {
            try {
                entries.push_back(xreal::parse(tokens[c], backend));
            } catch (const std::exception& e) {
                throw parse_error(e.what(), lineno, static_cast<int>(c) + 1);
            }
        }
    }
    return validate_space(backend, static_cast<int>(n), std::move(entries), tau);
}

Digraph parse_digraph(const std::string& text) {
    std::vector<std::pair<int, int>> arrows;
    int max_vertex = -1;
    for (const auto& [lineno, tokens] : data_lines(text)) {
        if (tokens.size() != 2) throw parse_error("expected 'u v'", lineno);
        int u, v;
        try {
            u = std::stoi(tokens[0]);
            v = std::stoi(tokens[1]);
        } catch (const std::exception&) {
            throw parse_error("vertices must be integers", lineno);
        }
        if (u < 0 || v < 0) throw parse_error("vertices must be nonnegative", lineno);
        arrows.emplace_back(u, v);
        max_vertex = std::max({max_vertex, u, v});
    }
    return Digraph(max_vertex + 1, std::move(arrows));
}

SpacePtr parse_points(const std::string& text, const std::string& metric, double tau) {
    std::vector<std::vector<double>> pts;
    size_t dim = 0;
    for (const auto& [lineno, tokens] : data_lines(text)) {
        std::vector<double> p;
        for (const auto& t : tokens) {
            try {
                p.push_back(std::stod(t));
            } catch (const std::exception&) {
                throw parse_error("bad coordinate '" + t + "'", lineno);
            }
        }
        if (dim == 0) dim = p.size();
        if (p.size() != dim) throw parse_error("inconsistent dimension", lineno);
        pts.push_back(std::move(p));
    }
    if (pts.empty()) throw parse_error("no points", 1);

    const int n = static_cast<int>(pts.size());
    std::vector<double> table;
    if (metric == "l2") {
        table = kernels::pairwise_euclidean(pts);
    } else if (metric == "l1" || metric == "linf") {
        table.assign(static_cast<size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (size_t k = 0; k < dim; ++k) {
                    double t = std::abs(pts[i][k] - pts[j][k]);
                    acc = metric == "l1" ? acc + t : std::max(acc, t);
                }
                table[static_cast<size_t>(i) * n + j] = acc;
            }
    } else {
        throw qsh_error("unknown metric: " + metric);
    }
    std::vector<xreal> entries;
    entries.reserve(table.size());
    for (double v : table) entries.push_back(xreal::of_double(v));
    return validate_space(Backend::Flt, n, std::move(entries), tau, {}, std::move(pts));
}

std::string print_matrix(const QMetSpace& X) {
    std::string out;
    for (int i = 0; i < X.size; ++i) {
        for (int j = 0; j < X.size; ++j) {
            if (j) out += ",";
            out += X.d(i, j).str();
        }
        out += "\n";
    }
    return out;
}

std::string print_digraph(const Digraph& g) {
    std::string out = "# " + std::to_string(g.n) + " vertices\n";
    for (auto [u, v] : g.arrows) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

SpacePtr circle_arc(double gap_degrees, int count, double tau) {
    if (count < 2) throw qsh_error("need at least two sample points");
    if (gap_degrees < 0 || gap_degrees >= 360) throw qsh_error("gap must lie in [0, 360)");
    const double span = 360.0 - gap_degrees;
    std::vector<std::vector<double>> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        // closed circle: spread over the full turn without duplicating 0 = 360
        const double step = gap_degrees == 0 ? span / count : span / (count - 1);
        const double theta = (105.0 + k * step) * std::numbers::pi / 180.0;
        pts.push_back({std::cos(theta), std::sin(theta)});
    }
    const int n = count;
    auto table = kernels::pairwise_euclidean(pts);
    std::vector<xreal> entries;
    entries.reserve(table.size());
    for (double v : table) entries.push_back(xreal::of_double(v));
    return validate_space(Backend::Flt, n, std::move(entries), tau, {}, std::move(pts));
}

SpacePtr grid(int w, int h, double tau) {
    if (w < 1 || h < 1) throw qsh_error("grid sides must be positive");
    std::vector<std::vector<double>> pts;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
    auto table = kernels::pairwise_euclidean(pts);
    std::vector<xreal> entries;
    entries.reserve(table.size());
    for (double v : table) entries.push_back(xreal::of_double(v));
    return validate_space(Backend::Flt, w * h, std::move(entries), tau, {}, std::move(pts));
}

Digraph cycle(int n) {
    if (n < 1) throw qsh_error("cycle needs at least one vertex");
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < n; ++i) arrows.emplace_back(i, (i + 1) % n);
    return Digraph(n, std::move(arrows));
}

} // namespace qsh::io
