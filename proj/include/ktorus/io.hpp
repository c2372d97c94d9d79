#pragma once

#include "ktorus/abelian_group.hpp"
#include "ktorus/bimodule.hpp"
#include "ktorus/dilation.hpp"
#include "ktorus/ktheory.hpp"
#include "ktorus/matrix.hpp"
#include "ktorus/verify.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ktorus {

class ParseError : public std::runtime_error {
  public:
    enum class Kind { empty, ragged, non_integer, not_square, bad_structure };

    ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline Integer parse_integer_token(std::string_view tok, std::size_t row) {
    std::string_view digits = tok;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    bool ok = !digits.empty();
    for (char ch : digits)
        ok = ok && std::isdigit(static_cast<unsigned char>(ch));
    if (!ok)
        throw ParseError(ParseError::Kind::non_integer,
                         "non-integer entry '" + std::string(tok) + "' in row " + std::to_string(row));
    std::string s(tok.front() == '+' ? tok.substr(1) : tok);
    return Integer(s);
}

inline IntegerMatrix assemble(std::vector<std::vector<Integer>> rows) {
    if (rows.empty())
        throw ParseError(ParseError::Kind::empty, "empty input");
    const std::size_t cols = rows.front().size();
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].size() != cols)
            throw ParseError(ParseError::Kind::ragged, "ragged row " + std::to_string(r + 1));
    if (cols != rows.size())
        throw ParseError(ParseError::Kind::not_square, "matrix is not square (" + std::to_string(rows.size()) +
                                                           " x " + std::to_string(cols) + ")");
    std::vector<Integer> flat;
    for (auto& r : rows)
        for (auto& x : r)
            flat.push_back(std::move(x));
    return IntegerMatrix(rows.size(), cols, std::move(flat));
}

inline IntegerMatrix parse_structured(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ParseError::Kind::bad_structure, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
        throw ParseError(ParseError::Kind::bad_structure, "expected {\"matrix\": [[...], ...]}");
    std::vector<std::vector<Integer>> rows;
    std::size_t r = 0;
    for (const auto& row : j["matrix"]) {
        ++r;
        if (!row.is_array())
            throw ParseError(ParseError::Kind::bad_structure, "row " + std::to_string(r) + " is not an array");
        std::vector<Integer> vals;
        for (const auto& x : row) {
            if (x.is_number_integer())
                vals.emplace_back(x.dump());
            else if (x.is_string())
                vals.push_back(parse_integer_token(x.get<std::string>(), r));
            else
                throw ParseError(ParseError::Kind::non_integer,
                                 "non-integer entry '" + x.dump() + "' in row " + std::to_string(r));
        }
        rows.push_back(std::move(vals));
    }
    if (!rows.empty() && rows.front().empty())
        throw ParseError(ParseError::Kind::empty, "empty input");
    return assemble(std::move(rows));
}

} // namespace detail

/// Row text "2 1; -1 2" (entries split by whitespace or commas) or {"matrix": [[2,1],[-1,2]]}.
inline IntegerMatrix parse_matrix(std::string_view text) {
    const std::string_view body = detail::trim(text);
    if (body.empty())
        throw ParseError(ParseError::Kind::empty, "empty input");
    if (body.front() == '{')
        return detail::parse_structured(std::string(body));

    std::vector<std::vector<Integer>> rows;
    std::size_t start = 0;
    std::size_t row_no = 0;
    while (start <= body.size()) {
        std::size_t end = body.find(';', start);
        if (end == std::string_view::npos)
            end = body.size();
        const std::string_view row_text = detail::trim(body.substr(start, end - start));
        ++row_no;
        std::vector<Integer> row;
        std::size_t p = 0;
        while (p < row_text.size()) {
            while (p < row_text.size() && (std::isspace(static_cast<unsigned char>(row_text[p])) || row_text[p] == ','))
                ++p;
            std::size_t q = p;
            while (q < row_text.size() && !std::isspace(static_cast<unsigned char>(row_text[q])) && row_text[q] != ',')
                ++q;
            if (q > p)
                row.push_back(detail::parse_integer_token(row_text.substr(p, q - p), row_no));
            p = q;
        }
        // a trailing ';' is tolerated
        if (!(row.empty() && end == body.size() && row_no > 1))
            rows.push_back(std::move(row));
        start = end + 1;
    }
    if (rows.front().empty())
        throw ParseError(ParseError::Kind::empty, "empty input");
    return detail::assemble(std::move(rows));
}

inline IntegerMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(ParseError::Kind::empty, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

/// Inverse of to_string(AbelianGroup); also accepts '+' as the separator.
inline AbelianGroup parse_group(std::string_view text) {
    std::string s(detail::trim(text));
    for (std::size_t p; (p = s.find("⊕")) != std::string::npos;)
        s.replace(p, std::string("⊕").size(), "+");
    if (s == "0")
        return AbelianGroup{};
    std::size_t free_rank = 0;
    std::vector<Integer> orders;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
        const std::string tok(detail::trim(part));
        if (tok == "Z")
            ++free_rank;
        else if (tok.rfind("Z^", 0) == 0)
            free_rank += std::stoul(tok.substr(2));
        else if (tok.rfind("Z/", 0) == 0)
            orders.push_back(detail::parse_integer_token(tok.substr(2), 1));
        else
            throw ParseError(ParseError::Kind::bad_structure, "unrecognised group summand '" + tok + "'");
    }
    return AbelianGroup::from_cyclic_orders(free_rank, orders);
}

// ---------------------------------------------------------------------------
// Structured report

struct NormDecayRecord {
    double epsilon = 0;
    unsigned n_max = 0;
    std::optional<unsigned> index;
    std::vector<double> norms;
};

struct RunReport {
    std::string command;
    std::string input;
    IntegerMatrix matrix;
    DilationCertificate certificate;
    std::optional<KTheoryResult> ktheory;
    std::optional<FilterBank> filterbank;
    std::optional<NormDecayRecord> norm_decay;
    std::vector<SuiteResult> verification;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> notes;
};

namespace detail {

using nlohmann::json;

inline json int_json(const Integer& x) {
    if (x.fits_slong_p())
        return json(x.get_si());
    return json(x.get_str());
}

inline Integer json_int(const json& j) {
    if (j.is_string())
        return Integer(j.get<std::string>());
    return Integer(j.dump());
}

inline json matrix_json(const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.push_back(int_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline IntegerMatrix json_matrix(const json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = json_int(j[i][k]);
    return m;
}

inline json int_list_json(const std::vector<Integer>& xs) {
    json out = json::array();
    for (const auto& x : xs)
        out.push_back(int_json(x));
    return out;
}

inline std::vector<Integer> json_int_list(const json& j) {
    std::vector<Integer> out;
    for (const auto& x : j)
        out.push_back(json_int(x));
    return out;
}

inline json group_json(const AbelianGroup& g) {
    return json{{"free_rank", g.free_rank()}, {"torsion", int_list_json(g.torsion())}, {"text", to_string(g)}};
}

inline AbelianGroup json_group(const json& j) {
    return AbelianGroup::from_cyclic_orders(j.at("free_rank").get<std::size_t>(), json_int_list(j.at("torsion")));
}

inline const char* outcome_name(SchurCohnStep::Outcome o) {
    switch (o) {
    case SchurCohnStep::Outcome::pass:
        return "pass";
    case SchurCohnStep::Outcome::degenerate:
        return "degenerate";
    case SchurCohnStep::Outcome::fail:
        return "fail";
    }
    return "?";
}

inline SchurCohnStep::Outcome outcome_from(const std::string& s) {
    if (s == "pass")
        return SchurCohnStep::Outcome::pass;
    if (s == "degenerate")
        return SchurCohnStep::Outcome::degenerate;
    if (s == "fail")
        return SchurCohnStep::Outcome::fail;
    throw ParseError(ParseError::Kind::bad_structure, "unknown Schur-Cohn outcome '" + s + "'");
}

inline KCase case_from(const std::string& s) {
    for (KCase c : {KCase::det_positive_odd_d, KCase::det_positive_even_d, KCase::det_negative})
        if (to_string(c) == s)
            return c;
    throw ParseError(ParseError::Kind::bad_structure, "unknown case tag '" + s + "'");
}

inline json exponent_json(const Exponent& e) { return json(e); }

} // namespace detail

/// Stable-keyed report. Grade output may be limited to `grades`; the K-groups
/// themselves are always complete.
inline nlohmann::json report_to_json(const RunReport& r) {
    using detail::json;
    json j;
    j["command"] = r.command;
    j["input"] = r.input;
    j["matrix"] = detail::matrix_json(r.matrix);
    j["d"] = r.matrix.rows();
    j["det"] = detail::int_json(r.certificate.det);
    j["dilation"] = r.certificate.is_dilation;
    j["charpoly"] = detail::int_list_json(r.certificate.charpoly);

    json evidence = json::array();
    for (const auto& s : r.certificate.evidence)
        evidence.push_back(json{{"degree", s.degree},
                                {"leading", detail::int_json(s.leading)},
                                {"constant", detail::int_json(s.constant)},
                                {"outcome", detail::outcome_name(s.outcome)}});
    j["certificate"] = json{{"evidence", evidence},
                            {"notes", r.certificate.notes},
                            {"float_eigenvalue_moduli", r.certificate.float_eigenvalue_moduli}};

    if (r.ktheory) {
        const KTheoryResult& k = *r.ktheory;
        j["case"] = to_string(k.case_tag);
        j["k0"] = detail::group_json(k.k0);
        j["k1"] = detail::group_json(k.k1);
        json sums = json::array();
        for (const auto& s : k.summands)
            sums.push_back(json{{"n", s.n},
                                {"parity", s.parity},
                                {"one_minus_b", detail::matrix_json(s.one_minus_b)},
                                {"cokernel", detail::group_json(s.cokernel)}});
        j["summands"] = sums;
        j["kernel_free_summand"] = k.kernel_free_summand;
        j["identity_class"] = json{{"modulus", detail::int_json(k.identity_class.modulus)},
                                   {"residue", detail::int_json(k.identity_class.residue)},
                                   {"zero", k.identity_class.is_zero()},
                                   {"text", to_string(k.identity_class)}};
    }
    if (r.filterbank) {
        json fb = json::array();
        for (const auto& g : r.filterbank->gammas)
            fb.push_back(detail::exponent_json(g));
        j["filterbank"] = fb;
    }
    if (r.norm_decay) {
        const auto& nd = *r.norm_decay;
        j["norm_decay"] = json{{"epsilon", nd.epsilon},
                               {"n_max", nd.n_max},
                               {"index", nd.index ? json(*nd.index) : json(nullptr)},
                               {"norms", nd.norms}};
    }
    if (!r.verification.empty()) {
        json v = json::array();
        for (const auto& s : r.verification)
            v.push_back(json{{"suite", s.name}, {"passed", s.passed}, {"checks", s.checks}, {"failure", s.failure}});
        j["verification"] = v;
    }
    if (r.seed)
        j["seed"] = *r.seed;
    j["notes"] = r.notes;
    return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
    RunReport r;
    try {
        r.command = j.at("command").get<std::string>();
        r.input = j.at("input").get<std::string>();
        r.matrix = detail::json_matrix(j.at("matrix"));
        r.certificate.det = detail::json_int(j.at("det"));
        r.certificate.is_dilation = j.at("dilation").get<bool>();
        r.certificate.charpoly = detail::json_int_list(j.at("charpoly"));
        const auto& cert = j.at("certificate");
        for (const auto& s : cert.at("evidence"))
            r.certificate.evidence.push_back(SchurCohnStep{s.at("degree").get<std::size_t>(),
                                                           detail::json_int(s.at("leading")),
                                                           detail::json_int(s.at("constant")),
                                                           detail::outcome_from(s.at("outcome").get<std::string>())});
        r.certificate.notes = cert.at("notes").get<std::vector<std::string>>();
        r.certificate.float_eigenvalue_moduli = cert.at("float_eigenvalue_moduli").get<std::vector<double>>();

        if (j.contains("k0")) {
            KTheoryResult k;
            k.d = j.at("d").get<std::size_t>();
            k.det = r.certificate.det;
            k.case_tag = detail::case_from(j.at("case").get<std::string>());
            k.k0 = detail::json_group(j.at("k0"));
            k.k1 = detail::json_group(j.at("k1"));
            for (const auto& s : j.at("summands"))
                k.summands.push_back(GradeSummand{s.at("n").get<std::size_t>(), detail::json_matrix(s.at("one_minus_b")),
                                                  detail::json_group(s.at("cokernel")), s.at("parity").get<int>()});
            k.kernel_free_summand = j.at("kernel_free_summand").get<int>();
            const auto& ic = j.at("identity_class");
            k.identity_class = IdentityClass{detail::json_int(ic.at("modulus")), detail::json_int(ic.at("residue"))};
            r.ktheory = std::move(k);
        }
        if (j.contains("filterbank")) {
            FilterBank fb{r.matrix, 0, {}};
            for (const auto& g : j.at("filterbank"))
                fb.gammas.push_back(g.get<Exponent>());
            fb.n = fb.gammas.size();
            r.filterbank = std::move(fb);
        }
        if (j.contains("norm_decay")) {
            const auto& nd = j.at("norm_decay");
            NormDecayRecord rec;
            rec.epsilon = nd.at("epsilon").get<double>();
            rec.n_max = nd.at("n_max").get<unsigned>();
            if (!nd.at("index").is_null())
                rec.index = nd.at("index").get<unsigned>();
            rec.norms = nd.at("norms").get<std::vector<double>>();
            r.norm_decay = std::move(rec);
        }
        if (j.contains("verification"))
            for (const auto& s : j.at("verification"))
                r.verification.push_back(SuiteResult{s.at("suite").get<std::string>(), s.at("passed").get<bool>(),
                                                     s.at("checks").get<std::size_t>(),
                                                     s.at("failure").get<std::string>()});
        if (j.contains("seed"))
            r.seed = j.at("seed").get<std::uint64_t>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ParseError::Kind::bad_structure, std::string("malformed report: ") + e.what());
    }
    return r;
}

} // namespace ktorus
