// ktorus: K-groups, dilation certificates, filter banks and identity checks
// for integer dilation matrices.

#include "ktorus/ktorus.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace ktorus;

namespace {

enum Exit { ok = 0, usage = 1, not_dilation = 2, verify_failed = 3 };

struct Options {
    std::string matrix_text;
    std::string file;
    bool json = false;
    std::vector<std::size_t> grades;
    std::uint64_t seed = 1;
    std::vector<std::size_t> random; // {d, count}
    double epsilon = 1e-3;
    unsigned nmax = 64;
};

std::string input_text(const Options& o) { return o.file.empty() ? o.matrix_text : "@" + o.file; }

IntegerMatrix read_matrix(const Options& o) {
    if (!o.file.empty())
        return parse_matrix_file(o.file);
    if (o.matrix_text.empty())
        throw ParseError(ParseError::Kind::empty, "empty input");
    return parse_matrix(o.matrix_text);
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

const char* outcome_word(SchurCohnStep::Outcome o) {
    switch (o) {
    case SchurCohnStep::Outcome::pass:
        return "pass";
    case SchurCohnStep::Outcome::degenerate:
        return "degenerate";
    default:
        return "fail";
    }
}

void print_certificate(const IntegerMatrix& m, const DilationCertificate& c) {
    std::cout << "matrix   " << to_string(m) << "\n"
              << "d        " << m.rows() << "\n"
              << "det      " << c.det << "\n"
              << "charpoly";
    for (const auto& x : c.charpoly)
        std::cout << ' ' << x;
    std::cout << "  (constant term first)\n"
              << "dilation " << (c.is_dilation ? "yes" : "no") << "\n";
    for (const auto& s : c.evidence)
        std::cout << "  step degree " << s.degree << ": |" << s.leading << "| vs |" << s.constant << "| "
                  << outcome_word(s.outcome) << "\n";
    for (const auto& n : c.notes)
        std::cout << "  note: " << n << "\n";
    std::cout << "  |eigenvalues| (float)";
    for (double x : c.float_eigenvalue_moduli)
        std::cout << ' ' << std::setprecision(6) << x;
    std::cout << "\n";
}

bool grade_selected(const Options& o, std::size_t n) {
    return o.grades.empty() || std::find(o.grades.begin(), o.grades.end(), n) != o.grades.end();
}

void print_ktheory(const Options& o, const KTheoryResult& k) {
    std::cout << "case     " << to_string(k.case_tag) << "\n"
              << " n  parity  coker(1 - B_n)\n";
    for (const auto& s : k.summands)
        if (grade_selected(o, s.n))
            std::cout << std::setw(2) << s.n << "  K" << s.parity << "      " << to_string(s.cokernel) << "\n";
    if (k.kernel_free_summand >= 0)
        std::cout << "extra Z from ker(1 - B_d) in K" << k.kernel_free_summand << "\n";
    std::cout << "K0 = " << to_string(k.k0) << "\n"
              << "K1 = " << to_string(k.k1) << "\n"
              << "[1] = " << to_string(k.identity_class) << " in the torsion of the n = 0 summand\n";
    for (const auto& n : k.notes)
        std::cout << "note: " << n << "\n";
}

void print_suites(const std::vector<SuiteResult>& suites) {
    for (const auto& s : suites)
        std::cout << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << " (" << s.checks << " checks)"
                  << (s.passed ? "" : ": " + s.failure) << "\n";
}

// Returns nullopt (and reports) when the matrix is not a dilation.
std::optional<DilationMatrix> certify_or_report(const Options& o, RunReport& report) {
    report.certificate = certify_dilation(report.matrix);
    if (report.certificate.is_dilation)
        return DilationMatrix::from(report.matrix);
    report.notes.push_back("not a dilation matrix");
    if (o.json)
        print_json(report_to_json(report));
    else {
        print_certificate(report.matrix, report.certificate);
        std::cout << "error: not a dilation matrix\n";
    }
    return std::nullopt;
}

RunReport start(const Options& o, const std::string& command) {
    RunReport r;
    r.command = command;
    r.input = input_text(o);
    r.matrix = read_matrix(o);
    return r;
}

int cmd_check(const Options& o) {
    RunReport r = start(o, "check");
    if (!certify_or_report(o, r))
        return not_dilation;
    if (o.json)
        print_json(report_to_json(r));
    else
        print_certificate(r.matrix, r.certificate);
    return ok;
}

int cmd_ktheory(const Options& o) {
    RunReport r = start(o, "ktheory");
    const auto a = certify_or_report(o, r);
    if (!a)
        return not_dilation;
    KTheoryResult k = kgroups(*a);
    r.notes = k.notes;
    if (!o.grades.empty()) {
        std::vector<GradeSummand> kept;
        for (auto& s : k.summands)
            if (grade_selected(o, s.n))
                kept.push_back(std::move(s));
        k.summands = std::move(kept);
    }
    if (o.json) {
        r.ktheory = k;
        print_json(report_to_json(r));
    } else {
        print_certificate(r.matrix, r.certificate);
        print_ktheory(o, k);
    }
    return ok;
}

int cmd_filterbank(const Options& o) {
    RunReport r = start(o, "filterbank");
    const auto a = certify_or_report(o, r);
    if (!a)
        return not_dilation;
    FilterBank fb = build_filterbank(*a);
    const OrthonormalReport check = check_orthonormal(fb);
    r.verification.push_back(SuiteResult{"orthonormal", check.ok, fb.n * fb.n,
                                         check.ok ? "" : "filter bank is not orthonormal"});
    r.filterbank = fb;
    if (o.json)
        print_json(report_to_json(r));
    else {
        print_certificate(r.matrix, r.certificate);
        std::cout << "filter bank (" << fb.n << " characters z^gamma):\n";
        for (const auto& g : fb.gammas)
            std::cout << "  " << to_string(g) << "\n";
        std::cout << "orthonormal: " << (check.ok ? "yes" : "no") << " (max numeric deviation "
                  << check.max_numeric_deviation << ")\n";
    }
    return check.ok ? ok : verify_failed;
}

int cmd_normdecay(const Options& o) {
    RunReport r = start(o, "normdecay");
    const auto a = certify_or_report(o, r);
    if (!a)
        return not_dilation;
    const NormDecayResult nd = norm_decay(*a, o.epsilon, o.nmax);
    r.norm_decay = NormDecayRecord{o.epsilon, o.nmax, nd.index, nd.norms};
    if (!nd.index)
        r.notes.push_back("no n <= " + std::to_string(o.nmax) + " with |A^-n| < epsilon");
    if (o.json)
        print_json(report_to_json(r));
    else {
        print_certificate(r.matrix, r.certificate);
        for (std::size_t n = 0; n < nd.norms.size(); ++n)
            std::cout << "  |A^-" << n + 1 << "| = " << std::setprecision(12) << nd.norms[n] << "\n";
        if (nd.index)
            std::cout << "first n with |A^-n| < " << o.epsilon << ": " << *nd.index << "\n";
        else
            std::cout << r.notes.back() << "\n";
    }
    return ok;
}

// Sums per-suite results over many matrices, keeping the first failure.
void accumulate(std::vector<SuiteResult>& total, const std::vector<SuiteResult>& one, const IntegerMatrix& m) {
    for (const auto& s : one) {
        auto it = std::find_if(total.begin(), total.end(), [&](const SuiteResult& t) { return t.name == s.name; });
        if (it == total.end()) {
            total.push_back(SuiteResult{s.name, true, 0, ""});
            it = total.end() - 1;
        }
        it->checks += s.checks;
        if (!s.passed && it->passed) {
            it->passed = false;
            it->failure = to_string(m) + ": " + s.failure;
        }
    }
}

bool all_passed(const std::vector<SuiteResult>& suites) {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

int cmd_verify(const Options& o) {
    Rng rng(o.seed);
    if (o.random.empty()) {
        RunReport r = start(o, "verify");
        const auto a = certify_or_report(o, r);
        if (!a)
            return not_dilation;
        r.verification = verify_all(*a, rng);
        r.seed = o.seed;
        if (o.json)
            print_json(report_to_json(r));
        else {
            print_certificate(r.matrix, r.certificate);
            print_suites(r.verification);
        }
        return all_passed(r.verification) ? ok : verify_failed;
    }

    if (o.random.size() != 2 || o.random[0] < 1 || o.random[1] < 1)
        throw CLI::ValidationError("--random", "expects D COUNT with D, COUNT >= 1");
    const std::size_t d = o.random[0], count = o.random[1];
    std::vector<SuiteResult> total;
    nlohmann::json matrices = nlohmann::json::array();
    for (std::size_t i = 0; i < count; ++i) {
        const DilationMatrix a = random_dilation_matrix(rng, d);
        const auto suites = verify_all(a, rng);
        accumulate(total, suites, a.matrix());
        matrices.push_back(nlohmann::json{{"matrix", to_string(a.matrix())},
                                          {"det", a.det().get_str()},
                                          {"passed", all_passed(suites)}});
    }
    if (o.json) {
        nlohmann::json j;
        j["command"] = "verify";
        j["d"] = d;
        j["count"] = count;
        j["seed"] = o.seed;
        nlohmann::json v = nlohmann::json::array();
        for (const auto& s : total)
            v.push_back({{"suite", s.name}, {"passed", s.passed}, {"checks", s.checks}, {"failure", s.failure}});
        j["verification"] = v;
        j["matrices"] = matrices;
        print_json(j);
    } else {
        std::cout << count << " random dilation matrices, d = " << d << ", seed " << o.seed << "\n";
        print_suites(total);
    }
    return all_passed(total) ? ok : verify_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"K-theory of Exel crossed products by integer dilation matrices"};
    app.require_subcommand(1);
    Options o;

    auto add_matrix = [&](CLI::App* sub, bool required) {
        auto* pos = sub->add_option("matrix", o.matrix_text, "matrix as \"a b; c d\" or {\"matrix\": [[a,b],[c,d]]}");
        auto* file = sub->add_option("--file", o.file, "read the matrix from a file");
        pos->excludes(file);
        if (required)
            sub->callback([&] {
                if (o.matrix_text.empty() && o.file.empty())
                    throw CLI::RequiredError("matrix or --file");
            });
        sub->add_flag("--json", o.json, "structured output");
    };

    auto* check = app.add_subcommand("check", "certify that every eigenvalue has modulus > 1");
    add_matrix(check, true);
    auto* kt = app.add_subcommand("ktheory", "compute K0 and K1");
    add_matrix(kt, true);
    kt->add_option("--grades", o.grades, "restrict the per-grade table to these n")->delimiter(',');
    auto* fb = app.add_subcommand("filterbank", "monomial filter bank and orthonormality check");
    add_matrix(fb, true);
    auto* ver = app.add_subcommand("verify", "run the identity suites");
    add_matrix(ver, false);
    ver->add_option("--random", o.random, "D COUNT: random dilation matrices instead of one matrix")->expected(2);
    ver->add_option("--seed", o.seed, "random seed");
    auto* nd = app.add_subcommand("normdecay", "first n with |A^-n| < epsilon");
    add_matrix(nd, true);
    nd->add_option("--epsilon", o.epsilon, "threshold")->check(CLI::PositiveNumber);
    nd->add_option("--nmax", o.nmax, "largest power tried")->check(CLI::Range(1u, 100000u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int code = ok;
    try {
        if (*check)
            code = cmd_check(o);
        else if (*kt)
            code = cmd_ktheory(o);
        else if (*fb)
            code = cmd_filterbank(o);
        else if (*ver) {
            if (o.random.empty() && o.matrix_text.empty() && o.file.empty())
                throw CLI::RequiredError("matrix, --file or --random");
            code = cmd_verify(o);
        } else
            code = cmd_normdecay(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return usage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const NotDilationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return not_dilation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    if (!o.json) {
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "time     " << std::fixed << std::setprecision(1) << ms << " ms\n";
    }
    return code;
}
