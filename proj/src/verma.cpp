#include "dynrx/verma.hpp"

#include <functional>
#include <set>

namespace dynrx {

std::vector<int> NegPart::root_coords(const Weight& beta) const {
    if (alg_.height(beta) < 0) throw MathError("weight " + weight_str(beta) + " not in Q_+");
    if (alg_.kind == Kind::SL2) return {beta[0] / 2};
    std::vector<int> c(alg_.N - 1);
    int acc = 0;
    for (int i = 0; i < alg_.N - 1; ++i) {
        acc += beta[i];
        c[i] = acc;
    }
    return c;
}

Weight NegPart::from_root_coords(const std::vector<int>& c) const {
    Weight w = alg_.zero_weight();
    for (size_t i = 0; i < c.size(); ++i)
        for (int k = 0; k < c[i]; ++k) w = w + alg_.simple_root(static_cast<int>(i));
    return w;
}

std::vector<Weight> NegPart::weights_of_height(int h) const {
    std::vector<Weight> out;
    int r = alg_.rank();
    std::vector<int> c(r, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == r - 1) {
            c[i] = left;
            out.push_back(from_root_coords(c));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            c[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, h);
    return out;
}

Weight word_weight(const Algebra& alg, const Word& w, size_t from) {
    Weight s = alg.zero_weight();
    for (size_t p = from; p < w.size(); ++p) s = s + alg.simple_root(w[p]);
    return s;
}

namespace {

struct Relation {
    std::vector<std::pair<Rational, Word>> terms;
    std::vector<int> counts;
    int length;
};

std::vector<Relation> serre_relations(const Algebra& A) {
    std::vector<Relation> out;
    int r = A.rank();
    Rational two = q_number(2, A.q);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            Relation rel;
            rel.counts.assign(r, 0);
            if (std::abs(i - j) == 1) {
                rel.terms = {{1, {i, i, j}}, {-two, {i, j, i}}, {1, {j, i, i}}};
                rel.counts[i] = 2;
                rel.counts[j] = 1;
                rel.length = 3;
            } else if (i < j) {
                rel.terms = {{1, {i, j}}, {-1, {j, i}}};
                rel.counts[i] = 1;
                rel.counts[j] = 1;
                rel.length = 2;
            } else {
                continue;
            }
            out.push_back(rel);
        }
    return out;
}

void enumerate_words(std::vector<int>& counts, Word& cur, int len, std::vector<Word>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (size_t i = 0; i < counts.size(); ++i) {
        if (!counts[i]) continue;
        --counts[i];
        cur.push_back(static_cast<int>(i));
        enumerate_words(counts, cur, len, out);
        cur.pop_back();
        ++counts[i];
    }
}

}  // namespace

NegLevel NegPart::build(const Weight& beta) const {
    NegLevel L;
    L.beta = beta;
    auto c = root_coords(beta);
    int len = 0;
    for (int k : c) len += k;
    Word cur;
    enumerate_words(c, cur, len, L.words);
    for (size_t k = 0; k < L.words.size(); ++k) L.index[L.words[k]] = static_cast<int>(k);
    int nw = static_cast<int>(L.words.size());

    // Ideal span: u * rel * w over all placements.
    std::set<Word> seen;
    std::vector<std::vector<Rational>> rows;
    auto rels = serre_relations(alg_);
    for (size_t ri = 0; ri < rels.size(); ++ri) {
        const Relation& rel = rels[ri];
        for (const Word& w : L.words) {
            for (int p = 0; p + rel.length <= len; ++p) {
                std::vector<int> cnt(alg_.rank(), 0);
                for (int k = 0; k < rel.length; ++k) ++cnt[w[p + k]];
                if (cnt != rel.counts) continue;
                Word pre(w.begin(), w.begin() + p), suf(w.begin() + p + rel.length, w.end());
                Word key = pre;
                key.push_back(-1 - static_cast<int>(ri));
                key.insert(key.end(), suf.begin(), suf.end());
                if (!seen.insert(key).second) continue;
                std::vector<Rational> row(nw);
                for (auto& [coef, tw] : rel.terms) {
                    Word full = pre;
                    full.insert(full.end(), tw.begin(), tw.end());
                    full.insert(full.end(), suf.begin(), suf.end());
                    row[L.index.at(full)] += coef;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    RMat I(static_cast<int>(rows.size()), nw);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int k = 0; k < nw; ++k) I(static_cast<int>(r), k) = rows[r][k];
    auto piv = rref(I);
    std::vector<bool> is_piv(nw, false);
    for (int p : piv) is_piv[p] = true;
    std::map<int, int> basis_pos;
    for (int k = 0; k < nw; ++k)
        if (!is_piv[k]) {
            basis_pos[k] = static_cast<int>(L.basis.size());
            L.basis.push_back(k);
        }
    L.nf = RMat(nw, static_cast<int>(L.basis.size()));
    for (int k : L.basis) L.nf(k, basis_pos[k]) = 1;
    for (size_t r = 0; r < piv.size(); ++r)
        for (int k : L.basis)
            if (!is_zero(I(static_cast<int>(r), k))) L.nf(piv[r], basis_pos[k]) = -I(static_cast<int>(r), k);
    return L;
}

const NegLevel& NegPart::level(const Weight& beta) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(beta);
    if (it != cache_.end()) return *it->second;
    auto p = std::make_unique<NegLevel>(build(beta));
    const NegLevel& ref = *p;
    cache_[beta] = std::move(p);
    return ref;
}

NegPart& neg_part(const Algebra& alg) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<NegPart>> reg;
    std::string key = alg.name() + "|" + alg.q.str();
    std::lock_guard<std::mutex> lk(mu);
    auto it = reg.find(key);
    if (it != reg.end()) return *it->second;
    auto p = std::make_unique<NegPart>(alg);
    NegPart& ref = *p;
    reg[key] = std::move(p);
    return ref;
}

Lam<RatFunc> symbolic_lam(const Algebra& alg) {
    Lam<RatFunc> l{alg, {}};
    if (alg.kind == Kind::SL2) {
        l.x = {RatFunc::var()};
    } else if (alg.N == 2) {
        l.x = {RatFunc::var(), RatFunc(alg.classical() ? 0 : 1)};
    } else {
        throw MathError("symbolic lambda is only supported for sl2 and gl2");
    }
    return l;
}

}  // namespace dynrx
