// Command-line front end: exact sizes and witnesses for k-free sets in
// Z/nZ, the divisor forest behind them, and the minimal inclusion-maximal
// k-free subsets of [1, n].

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kfree/closed_form.hpp"
#include "kfree/forest.hpp"
#include "kfree/interval.hpp"
#include "kfree/oracle.hpp"
#include "kfree/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_set(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::string token;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            if (!token.empty()) {
                out.push_back(std::stoull(token));
                token.clear();
            }
        } else if (c >= '0' && c <= '9') {
            token += c;
        } else {
            throw UsageError(std::string("unexpected character '") + c +
                             "' in set");
        }
    }
    if (!token.empty()) out.push_back(std::stoull(token));
    return out;
}

std::string join(const std::vector<std::uint64_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(xs[i]);
    }
    return s;
}

std::string rational(std::int64_t num, std::int64_t den) {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

// Every applicable evaluation route, cross-checked against the forest.
kfree::RkValue rk_auto(std::uint64_t k, std::uint64_t n) {
    kfree::RkValue base = kfree::rk_general(k, n);
    auto expect = [&](const kfree::RkValue& v) {
        if (v.value != base.value)
            throw InternalError(
                "internal inconsistency: method '" +
                std::string(kfree::to_string(v.method)) + "' gives " +
                std::to_string(v.value) + " but the forest gives " +
                std::to_string(base.value) + " for k=" + std::to_string(k) +
                ", n=" + std::to_string(n));
    };
    if (std::gcd(k, n) == 1) expect(kfree::rk_coprime(k, n));
    if (k >= 2 && n % k == 0 && (n / k) % k != 0)
        expect(kfree::rk_km(k, n / k));
    if (k >= 2 && n % k == 0 && (n / k) % k == 0)
        expect(kfree::rk_k2m_chain(k, n));
    if (auto v = kfree::rk_prime_power_shapes(k, n)) expect(*v);
    return base;
}

kfree::RkValue run_rk_method(const std::string& method, std::uint64_t k,
                             std::uint64_t n) {
    if (method == "auto") return rk_auto(k, n);
    if (method == "forest") return kfree::rk_general(k, n);
    if (method == "coprime") {
        if (std::gcd(k, n) != 1)
            throw UsageError("--method coprime requires gcd(k, n) = 1");
        return kfree::rk_coprime(k, n);
    }
    if (method == "km") {
        if (k < 2 || n % k != 0 || (n / k) % k == 0)
            throw UsageError(
                "--method km requires n = k*m with k >= 2 and k not dividing m");
        return kfree::rk_km(k, n / k);
    }
    if (method == "k2m") {
        if (k < 2 || n % k != 0 || (n / k) % k != 0)
            throw UsageError("--method k2m requires k >= 2 and k^2 | n");
        return kfree::rk_k2m_chain(k, n);
    }
    if (method == "thm5") {
        auto v = kfree::rk_prime_power_shapes(k, n);
        if (!v)
            throw UsageError(
                "--method thm5: (k, n) matches none of the supported shapes");
        return *v;
    }
    if (method == "oracle") {
        if (n > 1'000'000) throw UsageError("--method oracle requires n <= 1e6");
        return kfree::RkValue{kfree::oracle_rk_pseudoforest(k, n),
                              kfree::RkMethod::oracle};
    }
    throw UsageError("unknown method '" + method + "'");
}

int cmd_rk(std::uint64_t k, std::uint64_t n, const std::string& method,
           bool check, bool as_json) {
    kfree::RkValue v = run_rk_method(method, k, n);
    if (check) {
        if (n > 1'000'000)
            throw UsageError("--check requires n <= 1e6 (oracle bound)");
        std::uint64_t ref = kfree::oracle_rk_pseudoforest(k, n);
        if (ref != v.value)
            throw InternalError("internal inconsistency: oracle gives " +
                                std::to_string(ref) + ", method gives " +
                                std::to_string(v.value));
    }
    if (as_json) {
        json out;
        out["k"] = k;
        out["n"] = n;
        out["rk"] = v.value;
        out["method"] = kfree::to_string(v.method);
        if (check) out["checked"] = true;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << v.value << "\n";
    }
    return 0;
}

int cmd_construct(std::uint64_t k, std::uint64_t n, bool as_json, bool as_csv) {
    kfree::KFreeSet set = kfree::construct_max_kfree(k, n);
    if (as_json) {
        json out;
        out["k"] = k;
        out["n"] = n;
        out["size"] = set.elements.size();
        out["set"] = set.elements;
        std::cout << out.dump() << "\n";
    } else if (as_csv) {
        std::cout << "element\n";
        for (std::uint64_t x : set.elements) std::cout << x << "\n";
    } else {
        std::cout << join(set.elements) << "\n";
    }
    return 0;
}

int cmd_verify(std::uint64_t k, std::uint64_t n, const std::string& set_text,
               const std::string& file) {
    std::string text = set_text;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw UsageError("cannot open file: " + file);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::vector<std::uint64_t> set = parse_set(text);
    bool free;
    try {
        free = kfree::is_kfree(set, k, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << "k-free: " << (free ? "true" : "false") << ", size "
              << set.size() << "\n";
    return 0;
}

int cmd_forest(std::uint64_t k, std::uint64_t n, const std::string& dot_path,
               bool boxed) {
    if (n == 0) throw UsageError("n must be >= 1");
    std::uint64_t kr = k % n;
    if (kr == 0)
        throw UsageError(
            "no divisor forest when k = 0 (mod n): every residue maps to 0");
    kfree::ModulusContext ctx = kfree::ModulusContext::make(kr, n);
    kfree::Forest forest = kfree::build_forest(ctx);
    std::string dot;
    std::uint64_t total = 0;
    if (boxed) {
        kfree::Selection sel = kfree::select_optimal(forest);
        total = sel.total;
        dot = kfree::forest_to_dot(forest, &sel);
    } else {
        dot = kfree::forest_to_dot(forest);
    }
    std::ostream* summary = &std::cout;
    if (dot_path == "-") {
        std::cout << dot;
        summary = &std::cerr;  // stdout carries the DOT stream
    } else {
        std::ofstream out(dot_path);
        if (!out) throw UsageError("cannot write file: " + dot_path);
        out << dot;
    }
    *summary << "trees=" << forest.roots.size()
             << " nodes=" << forest.nodes.size();
    if (boxed) *summary << " rk=" << total;
    *summary << "\n";
    return 0;
}

int cmd_tilde(std::uint64_t k, std::uint64_t n, bool construct, bool as_json) {
    std::uint64_t value = kfree::tilde_rk(k, n);
    auto rows = kfree::asymptotic_report(k, {n});
    std::optional<kfree::IntervalSolution> sol;
    if (construct) sol = kfree::construct_min_maximal(k, n);
    if (as_json) {
        json out;
        out["k"] = k;
        out["n"] = n;
        out["tilde_rk"] = value;
        if (!rows.empty()) {
            out["main_term"] = rational(rows[0].main_num, rows[0].main_den);
            out["error"] = rational(rows[0].err_num, rows[0].err_den);
        }
        if (sol) out["set"] = sol->elements;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << value << "\n";
        if (sol) std::cout << join(sol->elements) << "\n";
    }
    return 0;
}

int cmd_table(std::uint64_t k, std::uint64_t from, std::uint64_t to,
              std::uint64_t step, std::uint64_t oracle_max, bool tilde,
              const std::string& out_path) {
    if (step == 0) throw UsageError("--step must be >= 1");
    if (from == 0) throw UsageError("--n-from must be >= 1");
    if (tilde && k < 2) throw UsageError("--tilde requires k >= 2");
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = from; n <= to; n += step) ns.push_back(n);

    std::vector<std::string> rows(ns.size());
    std::vector<std::string> failures(ns.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(kfree::max_threads())
#endif
    for (long long i = 0; i < static_cast<long long>(ns.size()); ++i) {
        std::uint64_t n = ns[i];
        try {
            if (tilde) {
                auto r = kfree::asymptotic_report(k, {n});
                rows[i] = std::to_string(k) + "," + std::to_string(n) + "," +
                          std::to_string(r[0].exact) + "," +
                          rational(r[0].main_num, r[0].main_den) + "," +
                          rational(r[0].err_num, r[0].err_den);
                if (n <= std::min<std::uint64_t>(oracle_max, 18)) {
                    std::uint64_t ref = kfree::oracle_tilde_exhaustive(k, n);
                    if (ref != r[0].exact)
                        failures[i] = "oracle mismatch at n=" +
                                      std::to_string(n);
                }
            } else {
                kfree::RkValue v = kfree::rk_general(k, n);
                rows[i] = std::to_string(k) + "," + std::to_string(n) + "," +
                          std::to_string(v.value) + "," +
                          kfree::to_string(v.method);
                if (n <= oracle_max) {
                    std::uint64_t ref = kfree::oracle_rk_pseudoforest(k, n);
                    if (ref != v.value)
                        failures[i] = "oracle mismatch at n=" +
                                      std::to_string(n);
                }
            }
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    }
    for (const std::string& f : failures)
        if (!f.empty()) throw InternalError(f);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (out_path != "-") {
        file.open(out_path);
        if (!file) throw UsageError("cannot write file: " + out_path);
        os = &file;
    }
    *os << (tilde ? "k,n,tilde_rk,main_term,error" : "k,n,rk,method") << "\n";
    for (const std::string& r : rows) *os << r << "\n";
    if (out_path != "-")
        std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
    return 0;
}

int cmd_sidon(std::uint32_t m, bool as_json) {
    kfree::SidonBound b = kfree::sidon_bound(m);
    if (as_json) {
        json out;
        out["m"] = b.m;
        out["n"] = b.n;
        out["r2"] = b.r2;
        if (b.degenerate) {
            out["log_form"] = nullptr;
            out["log_form_floor"] = nullptr;
        } else {
            out["log_form"] = b.log_form;
            out["log_form_floor"] = b.log_form_floor;
        }
        out["order_form"] = b.order_form;
        out["order_form_floor"] = b.order_form_floor;
        if (b.degenerate)
            out["warning"] =
                "log-form radicand is negative at this size; no bound";
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "m=" << b.m << " n=" << b.n << " r2=" << b.r2 << "\n";
        if (b.degenerate) {
            std::cout << "log_form=degenerate (negative radicand)\n";
        } else {
            std::cout << "log_form=" << b.log_form
                      << " floor=" << b.log_form_floor << "\n";
        }
        std::cout << "order_form=" << b.order_form
                  << " floor=" << b.order_form_floor << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& which, std::uint64_t k, std::uint64_t n) {
    std::uint64_t v;
    try {
        if (which == "rk-exhaustive")
            v = kfree::oracle_rk_exhaustive(k, n);
        else if (which == "rk-pseudoforest")
            v = kfree::oracle_rk_pseudoforest(k, n);
        else if (which == "tilde-exhaustive")
            v = kfree::oracle_tilde_exhaustive(k, n);
        else
            throw UsageError("unknown oracle '" + which + "'");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << v << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "kfree: exact sizes and witnesses for k-free sets in Z/nZ and [1, n]"};
    app.require_subcommand(1);

    std::uint64_t k = 0, n = 0;
    std::string method = "auto";
    bool check = false, as_json = false, as_csv = false, boxed = false,
         construct = false, tilde_mode = false;
    std::string set_text, file_path, dot_path, out_path, which;
    std::uint64_t n_from = 1, n_to = 1, step = 1, oracle_max = 0;
    std::uint32_t sidon_m = 2;

    auto* rk = app.add_subcommand("rk", "maximum k-free set size in Z/nZ");
    rk->add_option("--k", k, "multiplier")->required();
    rk->add_option("--n", n, "modulus")->required()->check(CLI::PositiveNumber);
    rk->add_option("--method", method, "auto|coprime|km|k2m|thm5|forest|oracle")
        ->check(CLI::IsMember(
            {"auto", "coprime", "km", "k2m", "thm5", "forest", "oracle"}));
    rk->add_flag("--check", check, "also compare with the reference oracle");
    rk->add_flag("--json", as_json, "JSON output");

    auto* con = app.add_subcommand("construct", "emit a maximum k-free set");
    con->add_option("--k", k, "multiplier")->required();
    con->add_option("--n", n, "modulus")->required()->check(CLI::PositiveNumber);
    con->add_flag("--json", as_json, "JSON output");
    con->add_flag("--csv", as_csv, "CSV output");

    auto* ver = app.add_subcommand("verify", "check a residue set for k-freeness");
    ver->add_option("--k", k, "multiplier")->required();
    ver->add_option("--n", n, "modulus")->required()->check(CLI::PositiveNumber);
    ver->add_option("--set", set_text, "comma-separated residues");
    ver->add_option("--file", file_path, "file with residues");

    auto* for_cmd = app.add_subcommand("forest", "write the divisor forest as DOT");
    for_cmd->add_option("--k", k, "multiplier")->required();
    for_cmd->add_option("--n", n, "modulus")
        ->required()
        ->check(CLI::PositiveNumber);
    for_cmd->add_option("--dot", dot_path, "output path ('-' for stdout)")
        ->required();
    for_cmd->add_flag("--boxed", boxed, "box the selected nodes");

    auto* til = app.add_subcommand(
        "tilde", "minimal inclusion-maximal k-free subset of [1, n]");
    til->add_option("--k", k, "multiplier")->required();
    til->add_option("--n", n, "interval end")->required();
    til->add_flag("--construct", construct, "also emit a witness set");
    til->add_flag("--json", as_json, "JSON output");

    auto* tab = app.add_subcommand("table", "CSV table over a range of n");
    tab->add_option("--k", k, "multiplier")->required();
    tab->add_option("--n-from", n_from, "first n")->required();
    tab->add_option("--n-to", n_to, "last n")->required();
    tab->add_option("--step", step, "stride (default 1)");
    tab->add_option("--oracle-max", oracle_max,
                    "cross-check rows with n below this against the oracle");
    tab->add_flag("--tilde", tilde_mode, "tabulate the interval problem instead");
    tab->add_option("--out", out_path, "output path ('-' for stdout)")
        ->required();

    auto* sid = app.add_subcommand(
        "sidon-bound", "size bounds for 2-fold Sidon sets mod 2^m - 1");
    sid->add_option("--m", sidon_m, "Mersenne exponent")->required();
    sid->add_flag("--json", as_json, "JSON output");

    auto* ora = app.add_subcommand("oracle", "run a reference oracle directly");
    ora->add_option("--which", which,
                    "rk-exhaustive|rk-pseudoforest|tilde-exhaustive")
        ->required()
        ->check(CLI::IsMember(
            {"rk-exhaustive", "rk-pseudoforest", "tilde-exhaustive"}));
    ora->add_option("--k", k, "multiplier")->required();
    ora->add_option("--n", n, "modulus / interval end")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (rk->parsed()) return cmd_rk(k, n, method, check, as_json);
        if (con->parsed()) return cmd_construct(k, n, as_json, as_csv);
        if (ver->parsed()) {
            if (set_text.empty() == file_path.empty())
                throw UsageError("verify needs exactly one of --set / --file");
            return cmd_verify(k, n, set_text, file_path);
        }
        if (for_cmd->parsed()) return cmd_forest(k, n, dot_path, boxed);
        if (til->parsed()) {
            if (k < 2) throw UsageError("tilde requires k >= 2");
            return cmd_tilde(k, n, construct, as_json);
        }
        if (tab->parsed())
            return cmd_table(k, n_from, n_to, step, oracle_max, tilde_mode,
                             out_path);
        if (sid->parsed()) return cmd_sidon(sidon_m, as_json);
        if (ora->parsed()) return cmd_oracle(which, k, n);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
