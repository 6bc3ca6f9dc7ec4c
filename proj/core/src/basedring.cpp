#include "affine_cells/basedring.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "affine_cells/cells.hpp"
#include "affine_cells/error.hpp"
#include "affine_cells/repring.hpp"

namespace affine_cells {

std::int64_t BasedRingElement::coefficient(const AffinePerm& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? 0 : it->second;
}

std::vector<std::pair<AffinePerm, std::int64_t>> BasedRingElement::sorted() const {
    std::vector<std::pair<AffinePerm, std::int64_t>> out(terms.begin(), terms.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return length_lex_less(a.first, b.first); });
    return out;
}

namespace {

void require_member(const AffinePerm& w, const Partition& lambda) {
    if (!is_member(w, lambda)) fail(errc::not_member, to_string(w) + " is not in the canonical intersection for lambda=" + to_string(lambda));
}

} // namespace

BasedRingElement t_product(const AffinePerm& w, const AffinePerm& u, const Partition& lambda) {
    if (w.rank() != u.rank()) fail(errc::rank_mismatch, "elements of different rank");
    GroupShape shape = GroupShape::of(lambda);
    if (shape.rank() != w.rank()) fail(errc::shape_mismatch, "lambda does not partition n");
    DominantWeight a = epsilon(w, lambda), b = epsilon(u, lambda);
    BasedRingElement out;
    for (const auto& [c, m] : product_Flambda(a, b, shape).terms) out.terms[from_epsilon(lambda, c)] += m;
    return out;
}

std::vector<AffinePerm> factorize(const AffinePerm& w, const Partition& lambda) {
    DominantWeight eps = epsilon(w, lambda);
    GroupShape shape = GroupShape::of(lambda);
    std::vector<AffinePerm> out;
    for (std::size_t i = 0; i < eps.classes.size(); ++i) {
        DominantWeight part = zero_weight(shape);
        part.classes[i] = eps.classes[i];
        out.push_back(from_epsilon(lambda, part));
    }
    return out;
}

std::int64_t predicted_gamma(const AffinePerm& w, const AffinePerm& u, const AffinePerm& v, const Partition& lambda) {
    require_member(w, lambda);
    require_member(u, lambda);
    if (!is_member(v, lambda)) return 0;
    GroupShape shape = GroupShape::of(lambda);
    return product_multiplicity(epsilon(w, lambda), epsilon(u, lambda), epsilon(v, lambda), shape);
}

AffinePerm sl_representative(const AffinePerm& w, const Partition& lambda) {
    return from_epsilon(lambda, restrict_sl(epsilon(w, lambda), GroupShape::of(lambda)));
}

BasedRingElement sl_product(const AffinePerm& w, const AffinePerm& u, const Partition& lambda) {
    BasedRingElement out;
    for (const auto& [v, m] : t_product(sl_representative(w, lambda), sl_representative(u, lambda), lambda).terms)
        out.terms[sl_representative(v, lambda)] += m;
    return out;
}

BasedRingElement pgl_product(const AffinePerm& w, const AffinePerm& u, const Partition& lambda) {
    for (const auto* x : {&w, &u})
        if (!is_pgl_weight(epsilon(*x, lambda)))
            fail(errc::not_in_subring, to_string(*x) + " has a weight with nonzero sum");
    BasedRingElement out = t_product(w, u, lambda);
    for (const auto& [v, m] : out.terms)
        if (!is_pgl_weight(epsilon(v, lambda)))
            fail(errc::not_in_subring, "product left the sum-zero sublattice at " + to_string(v));
    return out;
}

MatrixShape n_mu_matrix_shape(const Partition& lambda) {
    MatrixShape s;
    s.rows = n_mu(lambda);
    s.note = "the two-sided cell ring is a " + std::to_string(s.rows) + "x" + std::to_string(s.rows) +
             " matrix algebra over the ring of the canonical intersection";
    return s;
}

namespace {

// All weakly decreasing vectors of length m with entries in [lo, hi].
void decreasing_vectors(int m, entry_t lo, entry_t hi, std::vector<std::vector<entry_t>>& out) {
    std::vector<entry_t> cur;
    std::function<void(entry_t)> rec = [&](entry_t top) {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (entry_t v = top; v >= lo; --v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(hi);
}

} // namespace

std::vector<AffinePerm> enumerate_members(const Partition& lambda, int bound) {
    GroupShape shape = GroupShape::of(lambda);
    const entry_t rp = shape.classes.back().antichain_length;
    std::set<AffinePerm> found;
    int empty_shells = 0;
    for (entry_t radius = 0; empty_shells < 2; ++radius) {
        if (radius > 4 * bound + 8) fail(errc::limit_exceeded, "member enumeration did not settle");
        std::vector<std::vector<std::vector<entry_t>>> per_class;
        for (const auto& c : shape.classes) {
            std::vector<std::vector<entry_t>> vs;
            decreasing_vectors(c.size, -radius, radius, vs);
            per_class.push_back(std::move(vs));
        }
        bool added = false;
        DominantWeight x;
        x.classes.resize(per_class.size());
        std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool on_shell) {
            if (i == per_class.size()) {
                if (!on_shell && radius > 0) return;
                const entry_t anchor = x.classes.back().back();
                if (anchor < 0 || anchor >= rp) return;
                AffinePerm w = from_epsilon(lambda, x);
                if (length(w) <= bound) {
                    found.insert(w);
                    found.insert(inverse(w));
                    added = true;
                }
                return;
            }
            for (const auto& v : per_class[i]) {
                x.classes[i] = v;
                bool touches = on_shell || v.front() == radius || v.back() == -radius;
                rec(i + 1, touches);
            }
        };
        rec(0, false);
        empty_shells = added ? 0 : empty_shells + 1;
    }
    std::vector<AffinePerm> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), length_lex_less);
    return out;
}

namespace {

struct PairOutcome {
    std::vector<TripleRecord> records;
    std::uint64_t support_terms = 0, agreements = 0, disagreements = 0, degree_checks = 0, positivity_checks = 0;
    std::uint64_t duality_checks = 0, cyclic_checks = 0, cyclic_skipped = 0, star_gamma_checks = 0, star_h_checks = 0;
    std::vector<std::string> failures;
};

struct MemberInfo {
    bool member = false;
    DominantWeight eps;
};

class Verifier {
public:
    Verifier(int n, const Partition& lambda, KLStore& store, bool star_checks)
        : n_(n), lambda_(lambda), shape_(GroupShape::of(lambda)), store_(store), star_checks_(star_checks) {}

    PairOutcome run_pair(const AffinePerm& w, const AffinePerm& u);

private:
    std::int64_t a_of(const AffinePerm& v) {
        std::lock_guard lock(mu_);
        auto it = a_cache_.find(v);
        if (it != a_cache_.end()) return it->second;
        auto a = a_value(v);
        a_cache_.emplace(v, a);
        return a;
    }
    MemberInfo info_of(const AffinePerm& v) {
        {
            std::lock_guard lock(mu_);
            auto it = member_cache_.find(v);
            if (it != member_cache_.end()) return it->second;
        }
        MemberInfo info;
        info.member = is_member(v, lambda_);
        if (info.member) info.eps = epsilon(v, lambda_);
        std::lock_guard lock(mu_);
        member_cache_.emplace(v, info);
        return info;
    }
    std::int64_t gamma_in(const HeckeProduct& prod, const AffinePerm& v) {
        const LaurentPoly* h = prod.find(v);
        return h ? gamma_from_h(*h, a_of(v)) : 0;
    }
    void star_checks(const AffinePerm& w, const AffinePerm& u, const HeckeProduct& prod, PairOutcome& out);

    int n_;
    Partition lambda_;
    GroupShape shape_;
    KLStore& store_;
    bool star_checks_;
    std::mutex mu_;
    std::unordered_map<AffinePerm, std::int64_t, AffinePermHash> a_cache_;
    std::unordered_map<AffinePerm, MemberInfo, AffinePermHash> member_cache_;
};

PairOutcome Verifier::run_pair(const AffinePerm& w, const AffinePerm& u) {
    PairOutcome out;
    const std::string pair_tag = to_string(w) + " * " + to_string(u);
    auto prod = store_.product(w, u);
    const MemberInfo iw = info_of(w), iu = info_of(u);
    RepRingElement expected = product_Flambda(iw.eps, iu.eps, shape_);
    std::set<AffinePerm> predicted_seen;

    for (const auto& [v, h] : prod->terms) {
        ++out.support_terms;
        ++out.positivity_checks;
        for (const auto& [e, c] : h.terms())
            if (c < 0) {
                out.failures.push_back("negative coefficient in h for " + pair_tag + " at " + to_string(v));
                break;
            }
        std::int64_t gamma = 0;
        ++out.degree_checks;
        try {
            gamma = gamma_from_h(h, a_of(v));
        } catch (const error& e) {
            out.failures.push_back(pair_tag + ": " + e.what());
            continue;
        }
        if (gamma < 0) out.failures.push_back("negative gamma for " + pair_tag + " at " + to_string(v));
        std::int64_t predicted = 0;
        MemberInfo iv = info_of(v);
        if (iv.member) {
            predicted = expected.multiplicity(iv.eps);
            predicted_seen.insert(v);
        }
        if (gamma != 0 || predicted != 0) out.records.push_back({w, u, v, gamma, predicted, gamma == predicted});
        if (gamma == predicted) {
            ++out.agreements;
        } else {
            ++out.disagreements;
        }
    }
    // Predicted terms missing from the support.
    for (const auto& [c, m] : expected.terms) {
        AffinePerm v = from_epsilon(lambda_, c);
        if (predicted_seen.count(v)) continue;
        out.records.push_back({w, u, v, 0, m, m == 0});
        if (m == 0) {
            ++out.agreements;
        } else {
            ++out.disagreements;
        }
    }

    // gamma_{w,u,v} = gamma_{u^-1,w^-1,v^-1}
    auto dual = store_.product(inverse(u), inverse(w));
    for (const auto& [v, h] : prod->terms) {
        ++out.duality_checks;
        if (gamma_in(*prod, v) != gamma_in(*dual, inverse(v))) out.failures.push_back("duality fails for " + pair_tag + " at " + to_string(v));
    }
    for (const auto& [v, h] : dual->terms)
        if (!prod->find(inverse(v)) && gamma_in(*dual, v) != 0)
            out.failures.push_back("duality fails for " + pair_tag + " at " + to_string(inverse(v)));

    // gamma_{w,u,v} = gamma_{u,v^-1,w^-1} on nonzero triples that fit the budget
    for (const auto& [v, h] : prod->terms) {
        const std::int64_t g = gamma_in(*prod, v);
        if (g == 0) continue;
        if (length(u) + length(v) > store_.budget()) {
            ++out.cyclic_skipped;
            continue;
        }
        ++out.cyclic_checks;
        auto other = store_.product(u, inverse(v));
        if (gamma_in(*other, inverse(w)) != g) out.failures.push_back("cyclic symmetry fails for " + pair_tag + " at " + to_string(v));
    }

    if (star_checks_ && n_ >= 3) star_checks(w, u, *prod, out);
    return out;
}

void Verifier::star_checks(const AffinePerm& w, const AffinePerm& u, const HeckeProduct& prod, PairOutcome& out) {
    const std::string pair_tag = to_string(w) + " * " + to_string(u);
    auto fits = [&](const AffinePerm& x, const AffinePerm& y) { return length(x) + length(y) <= store_.budget(); };
    // h_{w,u,v} = h_{*w, u^star, *v^star}
    for (int i = 0; i < n_; ++i) {
        if (!in_DL(w, i)) continue;
        const AffinePerm sw = left_star(w, i);
        for (int k = 0; k < n_; ++k) {
            if (!in_DR(u, k)) continue;
            const AffinePerm us = right_star(u, k);
            if (!fits(sw, us)) continue;
            auto other = store_.product(sw, us);
            auto image = [&](const AffinePerm& v) { return left_star(right_star(v, k), i); };
            for (const auto& [v, h] : prod.terms) {
                if (!in_DL(v, i) || !in_DR(v, k)) continue;
                ++out.star_h_checks;
                if (!(other->coefficient(image(v)) == h)) out.failures.push_back("h star invariance fails for " + pair_tag + " at " + to_string(v));
            }
            for (const auto& [v, h] : other->terms) {
                if (!in_DL(v, i) || !in_DR(v, k)) continue;
                if (!(prod.coefficient(image(v)) == h)) out.failures.push_back("h star invariance fails (reverse) for " + pair_tag + " at " + to_string(v));
            }
        }
    }
    // gamma_{w,u,v} = gamma_{*w^#, #u^star, *v^star}
    for (int i = 0; i < n_; ++i) {
        if (!in_DL(w, i)) continue;
        const AffinePerm lw = left_star(w, i);
        for (int j = 0; j < n_; ++j) {
            if (!in_DR(w, j) || !in_DL(u, j)) continue;
            const AffinePerm sw = right_star(lw, j);
            const AffinePerm ru = left_star(u, j);
            for (int k = 0; k < n_; ++k) {
                if (!in_DR(u, k)) continue;
                const AffinePerm su = right_star(ru, k);
                if (!fits(sw, su)) continue;
                auto other = store_.product(sw, su);
                auto image = [&](const AffinePerm& v) { return left_star(right_star(v, k), i); };
                for (const auto& [v, h] : prod.terms) {
                    if (!in_DL(v, i) || !in_DR(v, k)) continue;
                    ++out.star_gamma_checks;
                    const AffinePerm iv = image(v);
                    if (gamma_in(prod, v) != gamma_in(*other, iv)) out.failures.push_back("gamma star invariance fails for " + pair_tag + " at " + to_string(v));
                }
                for (const auto& [v, h] : other->terms) {
                    if (!in_DL(v, i) || !in_DR(v, k)) continue;
                    if (gamma_in(*other, v) != gamma_in(prod, image(v)))
                        out.failures.push_back("gamma star invariance fails (reverse) for " + pair_tag + " at " + to_string(v));
                }
            }
        }
    }
}

bool record_less(const TripleRecord& a, const TripleRecord& b) {
    const std::pair<const AffinePerm*, const AffinePerm*> keys[] = {{&a.w, &b.w}, {&a.u, &b.u}, {&a.v, &b.v}};
    for (const auto& [x, y] : keys) {
        if (length_lex_less(*x, *y)) return true;
        if (length_lex_less(*y, *x)) return false;
    }
    return false;
}

} // namespace

VerificationReport verify_isomorphism(int n, const Partition& lambda, int bound, KLStore& store, const VerifyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    if (partition_size(lambda) != n) fail(errc::shape_mismatch, "lambda must partition n");
    if (store.rank() != n) fail(errc::rank_mismatch, "store rank differs from n");
    if (bound < 0) fail(errc::precondition_violated, "length bound must be nonnegative");
    const int budget = opts.budget > 0 ? opts.budget : 2 * bound + 4;
    if (budget > store.budget()) store.set_budget(budget);
    store.prepare();

    VerificationReport rep;
    rep.n = n;
    rep.lambda = lambda;
    rep.bound = bound;
    rep.members = enumerate_members(lambda, bound);

    std::vector<std::pair<AffinePerm, AffinePerm>> pairs;
    for (const auto& w : rep.members)
        for (const auto& u : rep.members) pairs.emplace_back(w, u);
    rep.pairs = pairs.size();

    Verifier verifier(n, lambda, store, opts.star_checks);
    std::vector<PairOutcome> outcomes(pairs.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= pairs.size()) return;
            try {
                outcomes[k] = verifier.run_pair(pairs[k].first, pairs[k].second);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                next = pairs.size();
                return;
            }
        }
    };
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (auto& o : outcomes) {
        rep.records.insert(rep.records.end(), o.records.begin(), o.records.end());
        rep.support_terms += o.support_terms;
        rep.agreements += o.agreements;
        rep.disagreements += o.disagreements;
        rep.degree_checks += o.degree_checks;
        rep.positivity_checks += o.positivity_checks;
        rep.duality_checks += o.duality_checks;
        rep.cyclic_checks += o.cyclic_checks;
        rep.cyclic_skipped += o.cyclic_skipped;
        rep.star_gamma_checks += o.star_gamma_checks;
        rep.star_h_checks += o.star_h_checks;
        rep.failures.insert(rep.failures.end(), o.failures.begin(), o.failures.end());
    }
    std::sort(rep.records.begin(), rep.records.end(), record_less);
    std::sort(rep.failures.begin(), rep.failures.end());
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string to_json(const VerificationReport& r, bool include_timing) {
    using nlohmann::json;
    json members = json::array();
    for (const auto& m : r.members) members.push_back(to_string(m));
    json triples = json::array();
    for (const auto& t : r.records)
        triples.push_back({{"w", to_string(t.w)},
                           {"u", to_string(t.u)},
                           {"v", to_string(t.v)},
                           {"gamma_oracle", t.gamma_oracle},
                           {"gamma_predicted", t.gamma_predicted},
                           {"agree", t.agree}});
    json j = {{"n", r.n},
              {"lambda", to_string(r.lambda)},
              {"max_length", r.bound},
              {"members", members},
              {"summary",
               {{"pairs", r.pairs},
                {"support_terms", r.support_terms},
                {"agreements", r.agreements},
                {"disagreements", r.disagreements},
                {"degree_checks", r.degree_checks},
                {"positivity_checks", r.positivity_checks},
                {"duality_checks", r.duality_checks},
                {"cyclic_checks", r.cyclic_checks},
                {"cyclic_skipped", r.cyclic_skipped},
                {"star_gamma_checks", r.star_gamma_checks},
                {"star_h_checks", r.star_h_checks},
                {"failures", r.failures.size()},
                {"ok", r.ok()}}},
              {"triples", triples},
              {"failures", r.failures}};
    if (include_timing) j["wall_time_seconds"] = r.wall_seconds;
    return j.dump(2);
}

} // namespace affine_cells
