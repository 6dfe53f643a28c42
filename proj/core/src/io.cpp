#include "defset/io.hpp"

#include <charconv>
#include <string>
#include <vector>

#include <json.hpp>

#include "defset/defining.hpp"
#include "defset/error.hpp"
#include "defset/goodform.hpp"

namespace defset {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_lines(std::string_view text) {
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find('\n', start);
        if (pos == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return lines;
}

std::size_t parse_dimension(std::string_view token) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end || value == 0) {
        throw Error(Errc::parse, "bad dimension '" + std::string(token) + "' in header");
    }
    return value;
}

std::vector<std::int64_t> int_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw Error(Errc::parse, std::string("margins JSON needs an integer array \"") + key + "\"");
    }
    std::vector<std::int64_t> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number_integer()) throw Error(Errc::parse, std::string("non-integer entry in \"") + key + "\"");
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

json witness_json(const GoodFormWitness& w) {
    json rows = json::array();
    json cols = json::array();
    json f = json::array();
    for (auto r : w.row_perm) rows.push_back(r + 1);
    for (auto c : w.col_perm) cols.push_back(c + 1);
    for (auto v : w.walk.thresholds()) f.push_back(v);
    return json{{"rows", rows}, {"cols", cols}, {"f", f}};
}

} // namespace

std::variant<BinaryMatrix, PartialMatrix> parse_matrix(std::string_view text) {
    if (text.empty()) throw Error(Errc::parse, "empty input");
    const auto lines = split_lines(text);
    const auto header = lines.front();
    const auto space = header.find(' ');
    if (space == std::string_view::npos) throw Error(Errc::parse, "header must be \"m n\"");
    const std::size_t m = parse_dimension(header.substr(0, space));
    const std::size_t n = parse_dimension(header.substr(space + 1));
    if (lines.size() - 1 != m) {
        throw Error(Errc::dimension_mismatch,
                    "expected " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - 1));
    }
    PartialMatrix p(m, n);
    bool has_unknown = false;
    for (std::size_t i = 0; i < m; ++i) {
        const auto line = lines[i + 1];
        if (line.size() != n) {
            throw Error(Errc::dimension_mismatch, "row " + std::to_string(i + 1) + " has " +
                                                      std::to_string(line.size()) + " cells, expected " +
                                                      std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            switch (line[j]) {
            case '0': p.set(i, j, Cell::zero); break;
            case '1': p.set(i, j, Cell::one); break;
            case '*': has_unknown = true; break;
            default: throw Error(Errc::parse, std::string("illegal character '") + line[j] + "'");
            }
        }
    }
    if (has_unknown) return p;
    BinaryMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, p.get(i, j) == Cell::one);
    return out;
}

BinaryMatrix parse_binary_matrix(std::string_view text) {
    auto parsed = parse_matrix(text);
    if (auto* m = std::get_if<BinaryMatrix>(&parsed)) return std::move(*m);
    throw Error(Errc::parse, "expected a fully filled 0/1 matrix");
}

PartialMatrix parse_partial_matrix(std::string_view text) {
    auto parsed = parse_matrix(text);
    if (auto* m = std::get_if<BinaryMatrix>(&parsed)) return PartialMatrix(*m);
    return std::get<PartialMatrix>(std::move(parsed));
}

std::string serialize(const BinaryMatrix& m) {
    std::string out = std::to_string(m.rows()) + ' ' + std::to_string(m.cols());
    out.reserve(out.size() + m.rows() * (m.cols() + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += '\n';
        for (std::size_t j = 0; j < m.cols(); ++j) out += m.get(i, j) ? '1' : '0';
    }
    return out;
}

std::string serialize(const PartialMatrix& p) {
    std::string out = std::to_string(p.rows()) + ' ' + std::to_string(p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        out += '\n';
        for (std::size_t j = 0; j < p.cols(); ++j) {
            switch (p.get(i, j)) {
            case Cell::zero: out += '0'; break;
            case Cell::one: out += '1'; break;
            case Cell::unknown: out += '*'; break;
            }
        }
    }
    return out;
}

MarginSpec margins_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse, std::string("margins JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::parse, "margins JSON must be an object");
    return {int_array(j, "s"), int_array(j, "t")};
}

std::string margins_to_json(const MarginSpec& margins) {
    return json{{"s", margins.s}, {"t", margins.t}}.dump();
}

std::string witness_to_json(const GoodFormWitness& w) { return witness_json(w).dump(); }

GoodFormWitness witness_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse, std::string("witness JSON: ") + e.what());
    }
    auto indices = [&](const char* key) {
        std::vector<std::size_t> out;
        for (auto v : int_array(j, key)) {
            if (v < 1) throw Error(Errc::parse, "witness indices are 1-based");
            out.push_back(static_cast<std::size_t>(v - 1));
        }
        return out;
    };
    GoodFormWitness w;
    w.row_perm = indices("rows");
    w.col_perm = indices("cols");
    std::vector<std::size_t> f;
    for (auto v : int_array(j, "f")) {
        if (v < 0) throw Error(Errc::parse, "walk thresholds are non-negative");
        f.push_back(static_cast<std::size_t>(v));
    }
    w.walk = Walk(std::move(f), w.col_perm.size());
    return w;
}

std::string sds_result_to_json(const SdsResult& r) {
    return json{{"sds", r.value}, {"D", serialize(r.witness_d)}, {"witness", witness_json(r.witness)}, {"exact", r.exact}}
        .dump();
}

} // namespace defset
