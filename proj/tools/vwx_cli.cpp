// vwx: detection of nontrivial solutions to ax + by = cz in multiplicative
// subgroups of F_p^x, and the Van der Waerden-like numbers VW3x(n) built on
// top of it.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "vwx/spectral.hpp"
#include "vwx/vw.hpp"

using json = nlohmann::ordered_json;
using vwx::u64;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

u64 now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Median of k wall-clock timings of fn, in integer nanoseconds.
template <typename Fn>
u64 median_time_ns(unsigned reps, Fn&& fn) {
    std::vector<u64> t;
    for (unsigned i = 0; i < reps; ++i) {
        u64 t0 = now_ns();
        fn();
        t.push_back(now_ns() - t0);
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

// Overwrite-in-place via temp file + rename; never appends.
void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_atomic(out_path, content);
}

json vw_result_json(const vwx::VwResult& r) {
    json j;
    j["n"] = r.n;
    j["p0"] = r.p0;
    j["bound"] = r.bound;
    j["scan_limit"] = r.scan_limit;
    j["primes_scanned"] = r.primes_scanned;
    j["exceptional_primes"] = r.exceptional_primes;
    j["a"] = r.a;
    j["b"] = r.b;
    j["c"] = r.c;
    j["certified"] = r.certified;
    if (!r.certified) j["status"] = "UNCERTIFIED";
    return j;
}

struct CommonArgs {
    u64 p = 0, n = 0;
    u64 a = 1, b = 1, c = 2;
    bool as_json = false;
};

vwx::Subgroup build_checked(u64 p, u64 n) {
    if (!vwx::is_prime(p)) throw std::domain_error("not prime: p = " + std::to_string(p));
    if (n < 1 || (p - 1) % n != 0)
        throw std::domain_error("n must divide p-1");
    return vwx::Subgroup(vwx::PrimeContext::make(p), n);
}

int run_detect(const CommonArgs& args) {
    u64 t0 = now_ns();
    auto sub = build_checked(args.p, args.n);
    auto eq = vwx::Equation::make(args.p, args.a, args.b, args.c);
    auto out = vwx::detect_fast(sub, eq);
    u64 elapsed = now_ns() - t0;
    if (args.as_json) {
        json j;
        j["p"] = args.p;
        j["n"] = args.n;
        j["subgroup_order"] = sub.order();
        j["has_solution"] = out.has_solution;
        if (out.witness)
            j["witness"] = {out.witness->x, out.witness->y, out.witness->z};
        j["elapsed_ns"] = elapsed;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "p=" << args.p << " n=" << args.n
                  << " |H|=" << sub.order()
                  << " has_solution=" << (out.has_solution ? "true" : "false");
        if (out.witness)
            std::cout << " witness=(" << out.witness->x << "," << out.witness->y
                      << "," << out.witness->z << ")";
        std::cout << " elapsed_ns=" << elapsed << "\n";
    }
    return out.has_solution ? kExitOk : kExitNegative;
}

std::string scan_csv(const std::vector<vwx::ScanRow>& rows) {
    std::ostringstream os;
    os << "n,vw,bound,primes_scanned,num_exceptions,largest_exception\n";
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            os << row.n << ",,,,,," << row.error << "\n";
            continue;
        }
        const auto& r = *row.result;
        u64 largest = r.exceptional_primes.empty() ? 0 : r.exceptional_primes.back();
        os << r.n << "," << r.p0 << "," << r.bound << "," << r.primes_scanned
           << "," << r.exceptional_primes.size() << "," << largest << "\n";
    }
    return os.str();
}

std::string scan_bfile(const std::vector<vwx::ScanRow>& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            os << "# n=" << row.n << " error: " << row.error << "\n";
            continue;
        }
        os << row.n << " " << row.result->p0 << "\n";
    }
    return os.str();
}

std::string scan_json(const std::vector<vwx::ScanRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            json j;
            j["n"] = row.n;
            j["error"] = row.error;
            arr.push_back(j);
        } else {
            arr.push_back(vw_result_json(*row.result));
        }
    }
    return arr.dump(2) + "\n";
}

struct OeisRecord {
    u64 n;
    u64 value;
};

// b-file: "<n> <value>" per line, '#' comments and blank lines ignored.
std::vector<OeisRecord> parse_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<OeisRecord> recs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        long long n, v;
        std::string rest;
        if (!(ls >> n >> v) || n < 0 || v < 0 || (ls >> rest)) {
            throw std::runtime_error("unparseable b-file line " +
                                     std::to_string(lineno) + ": " + line);
        }
        recs.push_back({static_cast<u64>(n), static_cast<u64>(v)});
    }
    return recs;
}

int run_bench(const CommonArgs& args, unsigned reps) {
    auto sub = build_checked(args.p, args.n);
    auto eq = vwx::Equation::make(args.p, args.a, args.b, args.c);
    const bool naive_ok = sub.order() <= 100000;
    volatile bool sink = false;
    u64 fast_ns = median_time_ns(reps, [&] {
        sink = vwx::detect_fast_full_scan(sub, eq);
    });
    u64 naive_ns = 0;
    if (naive_ok)
        naive_ns = median_time_ns(reps, [&] {
            sink = vwx::detect_naive_full_scan(sub, eq);
        });
    (void)sink;
    double ratio = naive_ok && fast_ns > 0
                       ? double(naive_ns) / double(fast_ns)
                       : 0.0;
    if (args.as_json) {
        json j;
        j["p"] = args.p;
        j["n"] = args.n;
        j["subgroup_order"] = sub.order();
        j["reps"] = reps;
        j["fast_median_ns"] = fast_ns;
        if (naive_ok) {
            j["naive_median_ns"] = naive_ns;
            j["speedup"] = ratio;
        } else {
            j["naive_skipped"] = "subgroup order above 100000";
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "p=" << args.p << " n=" << args.n << " |H|=" << sub.order()
                  << " reps=" << reps << "\n";
        std::cout << "fast  median: " << fast_ns << " ns\n";
        if (naive_ok) {
            std::cout << "naive median: " << naive_ns << " ns\n";
            std::cout << "speedup: " << ratio << "x\n";
        } else {
            std::cout << "naive leg skipped: |H| > 100000\n";
        }
    }
    return kExitOk;
}

int run_spectrum(const CommonArgs& args) {
    auto sub = build_checked(args.p, args.n);
    if (args.p > vwx::kSpectralCeiling)
        throw std::domain_error("p above spectral scale (<= 100000)");
    auto eq = vwx::Equation::make(args.p, args.a, args.b, args.c);
    auto rep = vwx::verify_count_identity(sub, eq);
    bool pass = rep.uniformity_pass && rep.identity_pass && rep.error_term_pass;
    if (args.as_json) {
        json j;
        j["p"] = rep.p;
        j["n"] = rep.n;
        j["alpha"] = rep.alpha;
        j["sqrt_p_bound"] = 1.0 / std::sqrt(double(rep.p));
        j["max_nonzero_magnitude"] = rep.max_nonzero_magnitude;
        j["max_k"] = rep.max_k;
        j["solution_count_exact"] = rep.solution_count_exact;
        j["solution_count_spectral"] = rep.solution_count_spectral;
        j["main_term"] = rep.main_term;
        j["error_bound"] = rep.error_bound;
        j["uniformity_pass"] = rep.uniformity_pass;
        j["identity_pass"] = rep.identity_pass;
        j["error_term_pass"] = rep.error_term_pass;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "p=" << rep.p << " n=" << rep.n << "\n"
                  << "alpha = " << rep.alpha
                  << " (bound p^-1/2 = " << 1.0 / std::sqrt(double(rep.p))
                  << ") " << (rep.uniformity_pass ? "PASS" : "FAIL") << "\n"
                  << "exact count = " << rep.solution_count_exact
                  << ", spectral = " << rep.solution_count_spectral << " "
                  << (rep.identity_pass ? "PASS" : "FAIL") << "\n"
                  << "main term = " << rep.main_term
                  << ", error bound = " << rep.error_bound << " "
                  << (rep.error_term_pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplicative Van der Waerden-like numbers VW3x(n)"};
    app.require_subcommand(1);

    CommonArgs args;
    unsigned workers = 1;
    unsigned reps = 5;
    u64 n_from = 2, n_to = 2;
    u64 bound_override = 0;
    bool have_bound = false;
    std::string format = "csv";
    std::string out_path;
    std::string bfile_path;
    u64 verify_to = 0;

    auto add_eq = [&](CLI::App* cmd) {
        cmd->add_option("--a", args.a, "coefficient a")->default_val(1);
        cmd->add_option("--b", args.b, "coefficient b")->default_val(1);
        cmd->add_option("--c", args.c, "coefficient c")->default_val(2);
    };

    auto* cmd_detect = app.add_subcommand("detect", "single detection for (p, n)");
    cmd_detect->add_option("--p", args.p)->required();
    cmd_detect->add_option("--n", args.n)->required();
    add_eq(cmd_detect);
    cmd_detect->add_flag("--json", args.as_json);

    auto* cmd_vw = app.add_subcommand("vw", "compute VW3x(n)");
    cmd_vw->add_option("--n", args.n)->required();
    add_eq(cmd_vw);
    cmd_vw->add_option("--bound", bound_override, "scan-limit override");
    cmd_vw->add_option("--workers", workers)->default_val(1);
    cmd_vw->add_option("--out", out_path);

    auto* cmd_scan = app.add_subcommand("scan", "VW3x(n) over a range of n");
    cmd_scan->add_option("--from", n_from)->required();
    cmd_scan->add_option("--to", n_to)->required();
    add_eq(cmd_scan);
    cmd_scan->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "json", "bfile"}));
    cmd_scan->add_option("--workers", workers)->default_val(1);
    cmd_scan->add_option("--out", out_path);

    auto* cmd_oeis = app.add_subcommand("verify-oeis", "compare against an OEIS b-file");
    cmd_oeis->add_option("--file", bfile_path)->required();
    cmd_oeis->add_option("--to", verify_to, "ignore entries with n beyond this");
    cmd_oeis->add_option("--workers", workers)->default_val(1);

    auto* cmd_bench = app.add_subcommand("bench", "naive vs fast full-scan timing");
    cmd_bench->add_option("--p", args.p)->required();
    cmd_bench->add_option("--n", args.n)->required();
    add_eq(cmd_bench);
    cmd_bench->add_option("--reps", reps)->check(CLI::Range(5u, 1000u));
    cmd_bench->add_flag("--json", args.as_json);

    auto* cmd_spectrum = app.add_subcommand("spectrum", "Fourier-side verification");
    cmd_spectrum->add_option("--p", args.p)->required();
    cmd_spectrum->add_option("--n", args.n)->required();
    add_eq(cmd_spectrum);
    cmd_spectrum->add_flag("--json", args.as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }
    have_bound = cmd_vw->count("--bound") > 0;

    try {
        if (*cmd_detect) return run_detect(args);
        if (*cmd_vw) {
            auto r = vwx::compute_vw(
                args.n, args.a, args.b, args.c,
                have_bound ? std::optional<u64>(bound_override) : std::nullopt,
                workers);
            emit(vw_result_json(r).dump(2) + "\n", out_path);
            return kExitOk;
        }
        if (*cmd_scan) {
            auto rows = vwx::scan_range(n_from, n_to, args.a, args.b, args.c, workers);
            std::string body = format == "csv"     ? scan_csv(rows)
                               : format == "bfile" ? scan_bfile(rows)
                                                   : scan_json(rows);
            emit(body, out_path);
            return kExitOk;
        }
        if (*cmd_oeis) {
            auto recs = parse_bfile(bfile_path);
            bool all_agree = true;
            for (const auto& rec : recs) {
                if (verify_to && rec.n > verify_to) continue;
                if (rec.n < 2) {
                    std::cerr << "error: b-file entry n=" << rec.n
                              << " is outside the domain (n >= 2)\n";
                    return kExitError;
                }
                auto r = vwx::compute_vw(rec.n, args.a, args.b, args.c,
                                         std::nullopt, workers);
                if (r.p0 == rec.value) {
                    std::cout << rec.n << " " << rec.value << " agree\n";
                } else {
                    std::cout << rec.n << " " << rec.value
                              << " MISMATCH computed=" << r.p0 << "\n";
                    all_agree = false;
                }
            }
            return all_agree ? kExitOk : kExitNegative;
        }
        if (*cmd_bench) return run_bench(args, reps);
        if (*cmd_spectrum) return run_spectrum(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
