#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <hmfw/hmfw.hpp>

// Exit codes: 0 clean, 1 mathematical finding (violated invariant, failed roundtrip,
// non-empty congruence scan, string-lemma mismatch), 2 usage or parse problem,
// 3 a task named in `tasks` is inapplicable to the given weight.

namespace {

int run_analyze_cmd(const std::string& file, bool human) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "error: cannot open '" << file << "'\n";
        return 2;
    }
    hmfw::ProblemSpec spec;
    try {
        spec = hmfw::parse_problem_spec(hmfw::json::parse(in));
    } catch (const hmfw::json::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hmfw::structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        auto t0 = std::chrono::steady_clock::now();
        hmfw::AnalyzeOutcome out = hmfw::run_analyze(spec);
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - t0).count();
        if (human) std::cout << hmfw::render_human(out.report);
        else std::cout << out.report.dump(2) << "\n";
        std::cerr << "analyze finished in " << us << " us\n"; // stderr: reports stay byte-stable
        return out.exit_code;
    } catch (const hmfw::structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hmfw::weight_domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hmfw::invariant_error& e) {
        std::cerr << "INVARIANT VIOLATION: " << e.what() << "\n";
        return 1;
    }
}

int run_enumerate_cmd(const hmfw::EnumerateParams& prm) {
    try {
        auto t0 = std::chrono::steady_clock::now();
        hmfw::EnumerateSummary sum = hmfw::run_enumeration(prm);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0).count();
        std::cout << "p=" << prm.p << " places=" << prm.places << " f=" << prm.f
                  << " (n=" << prm.places * prm.f << ") k in [" << prm.k_min << ", "
                  << prm.k_max << "]\n";
        std::cout << "weights processed: " << sum.weights << "\n";
        std::cout << "  roundtrip-admissible: " << sum.roundtrip_checked << "\n";
        std::cout << "  regularization-admissible: " << sum.impliedshape_checked << "\n";
        if (sum.skipped_nonpositive)
            std::cout << "  skipped (k_tau < 1): " << sum.skipped_nonpositive << "\n";
        std::cout << "string vectors checked: " << sum.string_vectors << "\n";
        std::cout << "findings: " << sum.findings.size() << "\n";
        for (const auto& f : sum.findings) std::cout << "  " << f << "\n";
        std::cerr << "enumerate finished in " << ms << " ms\n";
        return sum.findings.empty() ? 0 : 1;
    } catch (const hmfw::structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_decompose_cmd(std::int64_t p, const std::string& dstr) {
    hmfw::IVec d;
    std::stringstream ss(dstr);
    std::string item;
    try {
        while (std::getline(ss, item, ','))
            d.push_back(std::stoll(item));
    } catch (const std::exception&) {
        std::cerr << "error: --d expects comma-separated integers, got '" << dstr << "'\n";
        return 2;
    }
    if (d.empty()) {
        std::cerr << "error: --d must contain at least one entry\n";
        return 2;
    }
    try {
        hmfw::ExponentVector ev = hmfw::make_exponent_vector(p, d);
        std::int64_t r = hmfw::residue(ev);
        auto blocks = hmfw::string_decompose(ev);
        std::int64_t modulus = 1;
        for (int i = 0; i < ev.f; ++i) modulus *= p;
        --modulus;

        std::cout << "p=" << p << " f=" << ev.f << " d=[";
        for (std::size_t i = 0; i < d.size(); ++i) std::cout << (i ? "," : "") << d[i];
        std::cout << "]\n";
        std::cout << "residue: " << r << " (mod " << modulus << ")\n";
        if (blocks) {
            std::cout << "decomposition:";
            for (const auto& b : *blocks)
                std::cout << " " << (b.sign > 0 ? "+" : b.sign < 0 ? "-" : "zero")
                          << "(start=" << b.start << ", len=" << b.length << ")";
            std::cout << "\n";
        } else {
            std::cout << "decomposition: none\n";
        }

        bool all_pm1 = !d.empty();
        for (auto v : d)
            if (v != p - 1) { all_pm1 = false; break; }
        if (!all_pm1) {
            all_pm1 = true;
            for (auto v : d)
                if (v != 1 - p) { all_pm1 = false; break; }
        }
        bool consistent;
        if (all_pm1) {
            consistent = (r == 0) && !blocks;
            std::cout << "note: all-(p-1) exception (residue 0, intentionally no decomposition)\n";
        } else {
            consistent = (r == 0) == blocks.has_value();
        }
        std::cout << "agreement: " << (consistent ? "ok" : "MISMATCH") << "\n";
        return consistent ? 0 : 1;
    } catch (const hmfw::structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hmfw::weight_domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weight combinatorics for mod p Hilbert modular forms"};
    app.require_subcommand(1);

    std::string file;
    bool human = false;
    CLI::App* analyze = app.add_subcommand("analyze", "run the tasks of a problem JSON file");
    analyze->add_option("file", file, "problem document (JSON)")->required();
    analyze->add_flag("--human", human, "render a table instead of JSON");

    hmfw::EnumerateParams eprm;
    CLI::App* enumerate =
        app.add_subcommand("enumerate", "sweep a weight box and check the property suite");
    enumerate->add_option("--p", eprm.p, "odd prime")->required();
    enumerate->add_option("--places", eprm.places, "number of places")->required();
    enumerate->add_option("--f", eprm.f, "residue degree of each place")->required();
    enumerate->add_option("--k-min", eprm.k_min, "lower bound of every k entry")->required();
    enumerate->add_option("--k-max", eprm.k_max, "upper bound of every k entry")->required();

    std::int64_t dp = 3;
    std::string dstr;
    CLI::App* decompose =
        app.add_subcommand("decompose", "residue and string decomposition of an exponent vector");
    decompose->add_option("--p", dp, "odd prime")->required();
    decompose->add_option("--d", dstr, "comma-separated entries, e.g. --d=-1,2,3")->required();

    CLI::App* version = app.add_subcommand("version", "print the engine version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (analyze->parsed()) return run_analyze_cmd(file, human);
    if (enumerate->parsed()) return run_enumerate_cmd(eprm);
    if (decompose->parsed()) return run_decompose_cmd(dp, dstr);
    if (version->parsed()) {
        std::cout << hmfw::kEngineName << " " << hmfw::kEngineVersion << "\n";
        return 0;
    }
    return 2;
}
