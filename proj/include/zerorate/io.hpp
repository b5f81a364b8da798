// io.hpp -- codebook files and JSON encodings of reports and verdicts

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/radii.hpp"
#include "zerorate/rational.hpp"
#include "zerorate/verifier.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace zerorate {

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Codebook text format: a header line "q n M", then M lines of n space-separated symbols.
/// Lines starting with '#' are ignored.
inline void write_codebook(const Codebook& code, std::ostream& os)
{
    os << code.q() << ' ' << code.n() << ' ' << code.size() << '\n';
    for (const auto& row : code.rows()) {
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? " " : "") << row[j];
        os << '\n';
    }
}

inline Codebook read_codebook(std::istream& is)
{
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(is, out)) {
            auto pos = out.find_first_not_of(" \t\r");
            if (pos == std::string::npos || out[pos] == '#')
                continue;
            return true;
        }
        return false;
    };
    if (!next_line(line))
        throw ParseError("codebook: missing header line 'q n M'");
    long q = 0, n = 0, M = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> q >> n >> M) || (hs >> extra))
            throw ParseError("codebook: header must be 'q n M'");
    }
    if (q < 2 || q > kMaxAlphabet || n < 1 || M < 0)
        throw ParseError("codebook: header values out of range");
    std::vector<Codeword> rows;
    for (long i = 0; i < M; ++i) {
        if (!next_line(line))
            throw ParseError("codebook: expected " + std::to_string(M) + " rows, found " + std::to_string(i));
        std::istringstream rs(line);
        Codeword w;
        std::string tok;
        while (rs >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("codebook: row " + std::to_string(i) + " has a non-integer symbol '" + tok + "'");
            }
            if (used != tok.size())
                throw ParseError("codebook: row " + std::to_string(i) + " has a non-integer symbol '" + tok + "'");
            w.push_back(v);
        }
        if (static_cast<long>(w.size()) != n)
            throw ParseError("codebook: row " + std::to_string(i) + " has " + std::to_string(w.size())
                             + " symbols, expected " + std::to_string(n));
        for (Symbol x : w)
            if (x < 1 || x > q)
                throw ParseError("codebook: row " + std::to_string(i) + " has symbol " + std::to_string(x)
                                 + " outside [1.." + std::to_string(q) + "]");
        rows.push_back(std::move(w));
    }
    if (next_line(line))
        throw ParseError("codebook: trailing content after " + std::to_string(M) + " rows");
    return Codebook(static_cast<int>(q), static_cast<int>(n), std::move(rows));
}

inline Codebook read_codebook_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open codebook file '" + path + "'");
    return read_codebook(in);
}

inline void write_codebook_file(const Codebook& code, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write codebook file '" + path + "'");
    write_codebook(code, out);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

/// {"fraction": "a/b", "decimal": "0.xxxxxxxxxxxx"}
inline nlohmann::ordered_json rational_json(const Rational& r)
{
    return {{"fraction", to_fraction_string(r)}, {"decimal", to_decimal_string(r)}};
}

/// ell = 1 centers as a symbol list, otherwise a list of symbol lists.
inline nlohmann::ordered_json center_json(const ListSet& y)
{
    auto out = nlohmann::ordered_json::array();
    for (SubsetMask s : y.sets()) {
        auto elems = subset_elements(s);
        if (y.ell() == 1)
            out.push_back(elems.front());
        else
            out.push_back(elems);
    }
    return out;
}

inline nlohmann::ordered_json verdict_json(const Verdict& v)
{
    nlohmann::ordered_json j;
    j["verdict"] = v.pass ? "PASS" : "FAIL";
    j["p"] = to_fraction_string(v.p);
    j["ell"] = v.ell;
    j["L"] = v.L;
    j["witness_center"] = v.witness_center ? center_json(*v.witness_center) : nlohmann::ordered_json(nullptr);
    j["captured_rows"] = v.captured_rows;
    if (v.min_radius)
        j["min_radius"] = to_fraction_string(*v.min_radius);
    return j;
}

inline nlohmann::ordered_json radius_report_json(const RadiusReport& r)
{
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["ell"] = r.ell;
    j["n"] = r.n;
    j["L"] = r.L;
    j["average"] = rational_json(r.average);
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    for (const auto& [label, value] : r.weighted)
        w[label] = rational_json(value);
    j["weighted"] = w;
    if (r.chebyshev) {
        j["chebyshev"] = rational_json(*r.chebyshev);
        j["chebyshev_center"] = center_json(*r.chebyshev_center);
    }
    if (r.relaxed) {
        j["relaxed"] = *r.relaxed;
        j["relaxed_center"] = r.relaxed_center->blocks;
        j["relaxed_vertex_blocks"] = r.relaxed_center->vertex_blocks();
    }
    j["consistent"] = r.consistent();
    return j;
}

} // namespace zerorate
