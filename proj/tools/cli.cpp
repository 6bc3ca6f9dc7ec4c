#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "affine_cells/basedring.hpp"
#include "affine_cells/canonical.hpp"
#include "affine_cells/cells.hpp"
#include "affine_cells/error.hpp"
#include "affine_cells/hecke.hpp"
#include "affine_cells/repring.hpp"

namespace affine_cells::cli {

namespace {

using nlohmann::json;

struct Config {
    int n = 0;
    std::string lambda;
    bool json = false;
    std::string cache;
    int jobs = 1;
    int max_length = 8;
    int budget = 0;
};

std::string descent_set(const std::vector<int>& d) {
    std::string s = "{";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(d[i]);
    }
    return s + "}";
}

class Session {
public:
    Session(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    AffinePerm perm(const std::string& text) {
        AffinePerm w = parse_window(text, cfg_.n);
        if (cfg_.n == 0) cfg_.n = w.rank();
        return w;
    }

    Partition lambda_or(const AffinePerm& w) {
        if (cfg_.lambda.empty()) return lambda_partition(w);
        Partition l = parse_partition(cfg_.lambda);
        if (partition_size(l) != w.rank()) fail(errc::shape_mismatch, "lambda does not partition n=" + std::to_string(w.rank()));
        return l;
    }

    Partition lambda_required() {
        if (cfg_.lambda.empty()) fail(errc::parse_error, "--lambda is required");
        Partition l = parse_partition(cfg_.lambda);
        if (cfg_.n != 0 && partition_size(l) != cfg_.n) fail(errc::shape_mismatch, "lambda does not partition n");
        return l;
    }

    std::string cache_path() const {
        if (const char* env = std::getenv("AFFINE_CELLS_CACHE"); env && *env) return env;
        return cfg_.cache;
    }

    KLStore& store(int n) {
        if (!store_) {
            store_ = std::make_unique<KLStore>(n, cfg_.budget);
            if (auto path = cache_path(); !path.empty()) store_->load(path);
        }
        return *store_;
    }

    void save_cache() {
        if (store_)
            if (auto path = cache_path(); !path.empty()) store_->save(path);
    }

    void emit(const json& j, const std::string& text) {
        if (cfg_.json) {
            out_ << j.dump() << '\n';
        } else {
            out_ << text << '\n';
        }
    }

    int elt(const std::string& sub, const std::vector<std::string>& args) {
        auto need = [&](std::size_t k) {
            if (args.size() != k) fail(errc::parse_error, "elt " + sub + " expects " + std::to_string(k) + " argument(s)");
        };
        if (sub == "len") {
            need(1);
            auto w = perm(args[0]);
            auto l = length(w);
            emit({{"length", l}}, std::to_string(l));
        } else if (sub == "mul") {
            need(2);
            auto a = perm(args[0]);
            auto b = perm(args[1]);
            if (a.rank() != b.rank()) fail(errc::rank_mismatch, "elements of different rank");
            auto c = multiply(a, b);
            emit({{"window", to_string(c)}}, to_string(c));
        } else if (sub == "inv") {
            need(1);
            auto c = inverse(perm(args[0]));
            emit({{"window", to_string(c)}}, to_string(c));
        } else if (sub == "word") {
            need(1);
            auto word = reduced_word(perm(args[0]));
            emit({{"word", to_string(word)}}, to_string(word));
        } else if (sub == "desc") {
            need(1);
            auto w = perm(args[0]);
            auto r = right_descents(w), l = left_descents(w);
            emit({{"right", r}, {"left", l}}, "R=" + descent_set(r) + " L=" + descent_set(l));
        } else {
            fail(errc::parse_error, "unknown elt subcommand '" + sub + "'");
        }
        return ok;
    }

    int cell(const std::string& text) {
        auto w = perm(text);
        auto mu = mu_partition(w);
        auto lam = dual(mu);
        emit({{"lambda", lam}, {"mu", mu}, {"a", a_value(w)}}, "lambda=" + to_string(lam) + " mu=" + to_string(mu));
        return ok;
    }

    int eps(const std::string& text) {
        auto w = perm(text);
        auto lam = lambda_or(w);
        auto x = epsilon(w, lam);
        emit({{"lambda", to_string(lam)}, {"weight", json::parse(to_json(x))}}, to_string(x));
        return ok;
    }

    int eps_inv(const std::string& text) {
        auto lam = lambda_required();
        auto w = from_epsilon(lam, parse_weight(text));
        emit({{"window", to_string(w)}, {"length", length(w)}}, to_string(w));
        return ok;
    }

    int kl(const std::string& ytext, const std::string& wtext) {
        auto y = perm(ytext);
        auto w = perm(wtext);
        auto& st = store(w.rank());
        auto p = st.polynomial(y, w);
        auto m = st.mu(y, w);
        save_cache();
        emit({{"P", p}, {"mu", m}}, p.empty() ? "0" : kl_to_string(p));
        return ok;
    }

    int gamma(const std::string& wt, const std::string& ut, const std::string& vt) {
        auto w = perm(wt);
        auto u = perm(ut);
        auto v = perm(vt);
        auto& st = store(w.rank());
        auto prod = st.product(w, u);
        auto h = prod->coefficient(v);
        auto g = h.is_zero() ? 0 : gamma_from_h(h, a_value(v));
        save_cache();
        json j = {{"gamma", g}, {"h", h.to_string()}, {"a", a_value(v)}};
        Partition lam = lambda_partition(w);
        if (is_member(w, lam) && is_member(u, lam)) j["predicted"] = predicted_gamma(w, u, v, lam);
        emit(j, std::to_string(g));
        return ok;
    }

    int jprod(const std::string& wt, const std::string& ut, bool oracle) {
        auto w = perm(wt);
        auto u = perm(ut);
        auto lam = lambda_or(w);
        std::vector<std::pair<AffinePerm, std::int64_t>> terms;
        if (oracle) {
            auto& st = store(w.rank());
            for (const auto& [v, h] : st.product(w, u)->terms) {
                auto g = gamma_from_h(h, a_value(v));
                if (g != 0) terms.emplace_back(v, g);
            }
            save_cache();
            std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return length_lex_less(x.first, y.first); });
        } else {
            terms = t_product(w, u, lam).sorted();
        }
        json arr = json::array();
        std::string text;
        for (const auto& [v, c] : terms) {
            json entry = {{"window", to_string(v)}, {"coefficient", c}};
            if (is_member(v, lam)) entry["weight"] = json::parse(to_json(epsilon(v, lam)));
            arr.push_back(entry);
            if (!text.empty()) text += '\n';
            text += std::to_string(c) + " " + to_string(v);
        }
        emit(arr, text.empty() ? "0" : text);
        return ok;
    }

    int verify(bool timing, bool no_star, const std::string& output) {
        if (cfg_.n == 0) fail(errc::parse_error, "--n is required");
        auto lam = lambda_required();
        VerifyOptions opts;
        opts.jobs = cfg_.jobs;
        opts.star_checks = !no_star;
        opts.budget = cfg_.budget;
        auto& st = store(cfg_.n);
        auto rep = verify_isomorphism(cfg_.n, lam, cfg_.max_length, st, opts);
        save_cache();
        const std::string report = to_json(rep, timing);
        if (!output.empty()) {
            std::ofstream f(output);
            if (!f) fail(errc::precondition_violated, "cannot write " + output);
            f << report << '\n';
        }
        if (cfg_.json) {
            out_ << report << '\n';
        } else {
            out_ << "n=" << rep.n << " lambda=" << to_string(rep.lambda) << " max_length=" << rep.bound << " members=" << rep.members.size()
                 << " pairs=" << rep.pairs << " support=" << rep.support_terms << " agree=" << rep.agreements
                 << " disagree=" << rep.disagreements << " failures=" << rep.failures.size() << '\n';
            for (const auto& f : rep.failures) out_ << "failure: " << f << '\n';
            if (timing) out_ << "wall_time_seconds=" << rep.wall_seconds << '\n';
        }
        return rep.ok() ? ok : disagreement;
    }

private:
    Config cfg_;
    std::ostream& out_;
    std::unique_ptr<KLStore> store_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kazhdan-Lusztig cells and based rings of the extended affine Weyl group of type A"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--n", cfg.n, "rank (inferred from the first window when omitted)")->check(CLI::Range(2, 64));
    app.add_option("--lambda", cfg.lambda, "partition, e.g. 4,3,2,2");
    app.add_flag("--json", cfg.json, "structured output");
    app.add_option("--cache", cfg.cache, "KL cache file (AFFINE_CELLS_CACHE overrides)");
    app.add_option("--jobs", cfg.jobs, "worker threads for verify")->check(CLI::PositiveNumber);
    app.add_option("--max-length", cfg.max_length, "length bound for verify")->check(CLI::NonNegativeNumber);
    app.add_option("--budget", cfg.budget, "bound on l(w)+l(u) for products")->check(CLI::PositiveNumber);

    std::string elt_sub;
    std::string elt_a, elt_b;
    auto* elt = app.add_subcommand("elt", "element arithmetic: len, mul, inv, word, desc");
    elt->add_option("op", elt_sub, "operation")->required()->check(CLI::IsMember({"len", "mul", "inv", "word", "desc"}));
    elt->add_option("a", elt_a, "window");
    elt->add_option("b", elt_b, "second window (mul)");

    std::string w1, w2, w3;
    auto* cell = app.add_subcommand("cell", "two-sided cell invariants lambda(w), mu(w)");
    cell->add_option("w", w1)->required();
    auto* eps = app.add_subcommand("eps", "weight of a member of the canonical intersection");
    eps->add_option("w", w1)->required();
    auto* eps_inv = app.add_subcommand("eps-inv", "member with a given weight");
    eps_inv->add_option("weight", w1)->required();
    auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomial P_{y,w} (coefficients in q^2)");
    kl->add_option("y", w1)->required();
    kl->add_option("w", w2)->required();
    auto* gamma = app.add_subcommand("gamma", "structure constant gamma_{w,u,v} from the Hecke algebra");
    gamma->add_option("w", w1)->required();
    gamma->add_option("u", w2)->required();
    gamma->add_option("v", w3)->required();
    bool oracle = false;
    auto* jprod = app.add_subcommand("jprod", "product t_w t_u in the based ring");
    jprod->add_option("w", w1)->required();
    jprod->add_option("u", w2)->required();
    jprod->add_flag("--oracle", oracle, "compute from the Hecke algebra instead of the representation ring");
    bool timing = false, no_star = false;
    std::string output;
    auto* verify = app.add_subcommand("verify", "compare Hecke structure constants with Littlewood-Richardson predictions");
    verify->add_flag("--timing", timing, "include wall time in the report");
    verify->add_flag("--no-star", no_star, "skip the star-operation checks");
    verify->add_option("--output", output, "also write the JSON report to this file");
    for (auto* sub : {elt, cell, eps, eps_inv, kl, gamma, jprod, verify}) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }

    Session s(cfg, out);
    try {
        if (elt->parsed()) {
            std::vector<std::string> elt_args;
            for (const auto* a : {&elt_a, &elt_b})
                if (!a->empty()) elt_args.push_back(*a);
            return s.elt(elt_sub, elt_args);
        }
        if (cell->parsed()) return s.cell(w1);
        if (eps->parsed()) return s.eps(w1);
        if (eps_inv->parsed()) return s.eps_inv(w1);
        if (kl->parsed()) return s.kl(w1, w2);
        if (gamma->parsed()) return s.gamma(w1, w2, w3);
        if (jprod->parsed()) return s.jprod(w1, w2, oracle);
        if (verify->parsed()) return s.verify(timing, no_star, output);
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == errc::limit_exceeded ? limit_exceeded : invalid_input;
    }
    return invalid_input;
}

} // namespace affine_cells::cli
