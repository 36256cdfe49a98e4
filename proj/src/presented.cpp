#include "starcat/presented.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace starcat {

namespace {

void sort_terms(PExpr& e) {
    std::sort(e.begin(), e.end(), [](const PTerm& a, const PTerm& b) { return a.word < b.word; });
}

PExpr combine(PExpr e) {
    sort_terms(e);
    PExpr out;
    for (auto& t : e) {
        if (!out.empty() && out.back().word == t.word)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    }
    return out;
}

PExpr scale(const PExpr& e, const Rational& c) {
    PExpr out;
    for (const auto& t : e)
        if (!(c * t.coeff).is_zero()) out.push_back({c * t.coeff, t.word});
    return out;
}

PExpr add(PExpr a, const PExpr& b) {
    a.insert(a.end(), b.begin(), b.end());
    return combine(std::move(a));
}

}  // namespace

int PresentedLinearCategory::add_object(const std::string& name) {
    objects_.push_back(name);
    return nobjects() - 1;
}

int PresentedLinearCategory::add_generator(const std::string& name, int src, int tgt,
                                           bool invertible, int prec) {
    PGen g{name, src, tgt, invertible, -1, prec};
    gens_.push_back(g);
    int id = static_cast<int>(gens_.size()) - 1;
    if (invertible) {
        PGen gi{name + "^-", tgt, src, false, id, prec + 1};
        gens_.push_back(gi);
        gens_[id].inverse = id + 1;
        // cancellation: g o g^- = id_tgt, g^- o g = id_src
        add_relation({{Rational::one(), Word{id + 1, id}}, {Rational(-1), Word{}}});
        add_relation({{Rational::one(), Word{id, id + 1}}, {Rational(-1), Word{}}});
        // the two empty-word relations have different objects; the words
        // carry composability information through their neighbours, and the
        // empty word is only ever matched as a full replacement
    }
    return id;
}

void PresentedLinearCategory::add_relation(const PExpr& zero) {
    PExpr e = combine(zero);
    if (e.empty()) return;
    // homogeneity check (empty words adopt the object of nonempty ones)
    int s = -1, t = -1;
    for (const auto& term : e) {
        if (term.word.empty()) continue;
        if (!composable(term.word))
            throw std::invalid_argument("presented: non-composable relation word");
        int ws = word_src(term.word), wt = word_tgt(term.word);
        if (s == -1) {
            s = ws;
            t = wt;
        } else if (ws != s || wt != t) {
            throw std::invalid_argument("presented: relation not homogeneous");
        }
    }
    relations_.push_back(e);
}

int PresentedLinearCategory::object_by_name(const std::string& s) const {
    for (int i = 0; i < nobjects(); ++i)
        if (objects_[i] == s) return i;
    throw std::invalid_argument("presented: unknown object " + s);
}

int PresentedLinearCategory::gen_by_name(const std::string& s) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == s) return static_cast<int>(i);
    throw std::invalid_argument("presented: unknown generator " + s);
}

int PresentedLinearCategory::word_src(const Word& w, int fallback) const {
    return w.empty() ? fallback : gens_[w.front()].src;
}

int PresentedLinearCategory::word_tgt(const Word& w, int fallback) const {
    return w.empty() ? fallback : gens_[w.back()].tgt;
}

bool PresentedLinearCategory::composable(const Word& w) const {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (gens_[w[i]].tgt != gens_[w[i + 1]].src) return false;
    return true;
}

std::string PresentedLinearCategory::word_str(const Word& w, int obj_if_empty) const {
    if (w.empty())
        return obj_if_empty >= 0 ? "id_" + objects_[obj_if_empty] : "id";
    std::string s;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        s += gens_[*it].name;
        if (std::next(it) != w.rend()) s += ".";
    }
    return s;
}

bool PresentedLinearCategory::word_less(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        auto ka = std::pair{gens_[a[i]].prec, a[i]};
        auto kb = std::pair{gens_[b[i]].prec, b[i]};
        if (ka != kb) return ka < kb;
    }
    return false;
}

std::optional<Rule> PresentedLinearCategory::orient(const PExpr& e) const {
    if (e.empty()) return std::nullopt;
    size_t lead = 0;
    for (size_t i = 1; i < e.size(); ++i)
        if (word_less(e[lead].word, e[i].word)) lead = i;
    Rule r;
    r.lhs = e[lead].word;
    if (r.lhs.empty()) throw std::invalid_argument("presented: relation forces id = smaller");
    PExpr rest;
    const Rational inv = e[lead].coeff.inv();
    for (size_t i = 0; i < e.size(); ++i) {
        if (i == lead) continue;
        rest.push_back({-(e[i].coeff * inv), e[i].word});
    }
    r.rhs = combine(rest);
    for (const auto& t : r.rhs)
        if (!word_less(t.word, r.lhs))
            throw std::logic_error("presented: orientation failed to decrease");
    return r;
}

PExpr PresentedLinearCategory::reduce_once(const PTerm& t, bool& changed) const {
    for (size_t pos = 0; pos <= t.word.size(); ++pos)
        for (const auto& r : rules_) {
            const size_t L = r.lhs.size();
            if (pos + L > t.word.size()) continue;
            bool match = true;
            for (size_t k = 0; k < L && match; ++k) match = t.word[pos + k] == r.lhs[k];
            if (!match) continue;
            changed = true;
            PExpr out;
            for (const auto& rt : r.rhs) {
                Word w(t.word.begin(), t.word.begin() + pos);
                w.insert(w.end(), rt.word.begin(), rt.word.end());
                w.insert(w.end(), t.word.begin() + pos + L, t.word.end());
                out.push_back({t.coeff * rt.coeff, w});
            }
            return out;
        }
    changed = false;
    return {t};
}

PExpr PresentedLinearCategory::normal_form(const PExpr& e) const {
    PExpr cur = combine(e);
    for (int step = 0; step < 100000; ++step) {
        bool any = false;
        PExpr next;
        for (const auto& t : cur) {
            bool changed = false;
            PExpr red = reduce_once(t, changed);
            any = any || changed;
            next.insert(next.end(), red.begin(), red.end());
        }
        cur = combine(std::move(next));
        if (!any) return cur;
    }
    throw std::runtime_error("presented: rewriting exceeded the step cap");
}

PExpr PresentedLinearCategory::normal_form_word(const Word& w) const {
    return normal_form({{Rational::one(), w}});
}

namespace {

// superpositions of two rule left-hand sides: overlaps (a suffix of u is a
// prefix of v) and containments (v inside u); bounded by max_len
struct Superposition {
    Word word;
    // reductions: apply u at pos_u, or v at pos_v
    size_t pos_u, pos_v;
};

void enumerate_superpositions(const Word& u, const Word& v, bool same_rule, size_t max_len,
                              std::vector<Superposition>& out) {
    // overlap: suffix of u of length k equals prefix of v
    for (size_t k = 1; k <= std::min(u.size(), v.size()); ++k) {
        if (same_rule && k == u.size()) continue;  // trivial self overlap
        bool match = true;
        for (size_t t = 0; t < k && match; ++t) match = u[u.size() - k + t] == v[t];
        if (!match) continue;
        Word w = u;
        w.insert(w.end(), v.begin() + k, v.end());
        if (w.size() > max_len) continue;
        out.push_back({w, 0, u.size() - k});
    }
    // containment: v strictly inside u
    if (!same_rule && v.size() < u.size()) {
        for (size_t pos = 0; pos + v.size() <= u.size(); ++pos) {
            bool match = true;
            for (size_t t = 0; t < v.size() && match; ++t) match = u[pos + t] == v[t];
            if (!match) continue;
            if (u.size() > max_len) continue;
            out.push_back({u, 0, pos});
        }
    }
}

}  // namespace

bool PresentedLinearCategory::build_rules(int max_new_rules) {
    rules_.clear();
    std::vector<PExpr> queue = relations_;
    int added = 0;
    std::function<bool(const PExpr&)> push_rule = [&](const PExpr& e) -> bool {
        PExpr nf = normal_form(e);
        if (nf.empty()) return true;
        auto r = orient(nf);
        if (!r) return true;
        if (static_cast<int>(r->lhs.size()) > effective_completion_cap()) return true;
        for (const auto& ex : rules_)
            if (ex.lhs == r->lhs) {
                // same leading word: derive the difference of right sides
                PExpr diff = add(ex.rhs, scale(r->rhs, Rational(-1)));
                if (normal_form(diff).empty()) return true;
                return push_rule(diff);
            }
        rules_.push_back(*r);
        return ++added <= max_new_rules;
    };
    for (const auto& e : relations_)
        if (!push_rule(e)) return false;

    // queue of unprocessed rule pairs
    size_t processed = 0;
    while (processed < rules_.size()) {
        const size_t upto = rules_.size();
        for (size_t i = 0; i < upto; ++i) {
            for (size_t j = (i < processed ? processed : 0); j < upto; ++j) {
                for (int swap = 0; swap < 2; ++swap) {
                    const size_t ri = swap ? j : i, rj = swap ? i : j;
                    if (swap && ri == rj) continue;
                    std::vector<Superposition> sups;
                    enumerate_superpositions(rules_[ri].lhs, rules_[rj].lhs, ri == rj,
                                             static_cast<size_t>(effective_completion_cap()), sups);
                    for (const auto& sp : sups) {
                        // reduce via ri at pos_u and via rj at pos_v
                        auto apply_at = [&](const Rule& r, size_t pos) {
                            PExpr e;
                            for (const auto& rt : r.rhs) {
                                Word w(sp.word.begin(), sp.word.begin() + pos);
                                w.insert(w.end(), rt.word.begin(), rt.word.end());
                                w.insert(w.end(), sp.word.begin() + pos + r.lhs.size(),
                                         sp.word.end());
                                e.push_back({rt.coeff, w});
                            }
                            return normal_form(e);
                        };
                        PExpr left = apply_at(rules_[ri], sp.pos_u);
                        PExpr right = apply_at(rules_[rj], sp.pos_v);
                        PExpr diff = add(left, scale(right, Rational(-1)));
                        if (diff.empty()) continue;
                        if (!push_rule(diff)) return false;
                    }
                }
            }
        }
        processed = upto;
        if (rules_.size() == upto) break;
    }
    return check_confluence().confluent;
}

PresentedLinearCategory::ConfluenceReport PresentedLinearCategory::check_confluence() const {
    ConfluenceReport out;
    const size_t nr = rules_.size();
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nr; ++j) {
            std::vector<Superposition> sups;
            enumerate_superpositions(rules_[i].lhs, rules_[j].lhs, i == j,
                                     static_cast<size_t>(effective_completion_cap()), sups);
            for (const auto& sp : sups) {
                auto apply_at = [&](const Rule& r, size_t pos) {
                    PExpr e;
                    for (const auto& rt : r.rhs) {
                        Word w(sp.word.begin(), sp.word.begin() + pos);
                        w.insert(w.end(), rt.word.begin(), rt.word.end());
                        w.insert(w.end(), sp.word.begin() + pos + r.lhs.size(), sp.word.end());
                        e.push_back({rt.coeff, w});
                    }
                    return normal_form(e);
                };
                PExpr left = apply_at(rules_[i], sp.pos_u);
                PExpr right = apply_at(rules_[j], sp.pos_v);
                if (add(left, scale(right, Rational(-1))).empty()) continue;
                out.confluent = false;
                out.failures.push_back("unresolved critical pair at " + word_str(sp.word));
            }
        }
    return out;
}

bool PresentedLinearCategory::word_irreducible(const Word& w) const {
    for (const auto& r : rules_) {
        const size_t L = r.lhs.size();
        if (L > w.size()) continue;
        for (size_t pos = 0; pos + L <= w.size(); ++pos) {
            bool match = true;
            for (size_t k = 0; k < L && match; ++k) match = w[pos + k] == r.lhs[k];
            if (match) return false;
        }
    }
    return true;
}

PresentedLinearCategory::HomBasis PresentedLinearCategory::hom_basis_bounded(int src, int tgt,
                                                                             int bound) const {
    HomBasis out;
    std::vector<int> last_new(bound + 1, 0);
    // DFS over irreducible composable words starting at src
    std::vector<Word> frontier{{}};
    if (src == tgt) out.words.push_back({});
    for (int len = 1; len <= bound; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            int at = word_tgt(w, src);
            for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
                if (gens_[g].src != at) continue;
                Word ext = w;
                ext.push_back(g);
                // check suffixes ending at the new position
                bool irred = true;
                for (const auto& r : rules_) {
                    const size_t L = r.lhs.size();
                    if (L > ext.size()) continue;
                    bool match = true;
                    for (size_t k = 0; k < L && match; ++k)
                        match = ext[ext.size() - L + k] == r.lhs[k];
                    if (match) {
                        irred = false;
                        break;
                    }
                }
                if (!irred) continue;
                next.push_back(ext);
                if (gens_[g].tgt == tgt) {
                    out.words.push_back(ext);
                    ++last_new[len];
                }
            }
        }
        frontier = std::move(next);
    }
    out.saturated = bound >= 2 && last_new[bound] == 0 && last_new[bound - 1] == 0;
    return out;
}

PExpr PFunctor::apply_word(const Word& w) const {
    PExpr acc{{Rational::one(), Word{}}};
    // apply in application order: image(w) = image(w[k-1]) o ... o image(w[0])
    for (int g : w) {
        PExpr next;
        for (const auto& t : acc)
            for (const auto& gt : gen_map[g]) {
                Word nw = t.word;
                nw.insert(nw.end(), gt.word.begin(), gt.word.end());
                next.push_back({t.coeff * gt.coeff, nw});
            }
        acc = next;
    }
    return tgt->normal_form(acc);
}

PExpr PFunctor::apply(const PExpr& e) const {
    PExpr out;
    for (const auto& t : e) {
        PExpr w = apply_word(t.word);
        for (const auto& wt : w) out.push_back({t.coeff * wt.coeff, wt.word});
    }
    return tgt->normal_form(out);
}

bool PFunctor::well_defined() const {
    for (const auto& rel : src->relations())
        if (!apply(rel).empty()) return false;
    return true;
}

PresentedLinearCategory present_star_proj(int n) {
    PresentedLinearCategory cat;
    for (int j = 0; j <= n; ++j) cat.add_object("Ae" + std::to_string(j));
    std::vector<int> a(n + 1), b(n + 1);
    for (int k = 1; k <= n; ++k) a[k] = cat.add_generator("a" + std::to_string(k), k, 0);
    for (int k = 1; k <= n; ++k) b[k] = cat.add_generator("b" + std::to_string(k), 0, k);
    // b_i o a_k = 0 (leaf-to-leaf through the hub dies)
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            cat.add_relation({{Rational::one(), Word{a[k], b[i]}}});
    // the hub loops agree: a_k o b_k = a_1 o b_1
    for (int k = 2; k <= n; ++k)
        cat.add_relation({{Rational::one(), Word{b[k], a[k]}},
                          {Rational(-1), Word{b[1], a[1]}}});
    if (!cat.build_rules()) throw std::runtime_error("present_star_proj: completion failed");
    return cat;
}

CoisoResult coisoinserter(int n, const SetPartition& p) {
    CoisoResult out;
    out.cat = present_star_proj(n);
    PresentedLinearCategory& cat = out.cat;
    // the coisoinserter has infinite-dimensional Hom spaces; the rewriting
    // system is only completed (and checked) up to this superposition bound
    cat.completion_cap = 6;
    auto a = [&](int k) { return cat.gen_by_name("a" + std::to_string(k)); };
    auto b = [&](int k) { return cat.gen_by_name("b" + std::to_string(k)); };
    const Word cword{b(1), a(1)};  // a_1 o b_1, the hub loop
    for (size_t bi = 1; bi < p.blocks.size(); ++bi) {
        const auto& blk = p.blocks[bi];
        for (size_t l = 0; l + 1 < blk.size(); ++l) {
            CoisoResult::PairGens pg;
            pg.u = blk[l];
            pg.v = blk[l + 1];
            std::string tag = "(" + std::to_string(pg.u) + ">" + std::to_string(pg.v) + ")";
            for (int j = 0; j <= n; ++j)
                pg.xi_obj.push_back(cat.add_generator("xi" + tag + "o" + std::to_string(j), j, j,
                                                      true, 1));
            pg.xi_arrow = cat.add_generator("xi" + tag + "A", pg.u, pg.v, true, 1);
            const int x0 = pg.xi_obj[0], xa = pg.xi_arrow;
            // c xi(0) = xi(0) c
            {
                Word lhs{x0};
                lhs.insert(lhs.end(), cword.begin(), cword.end());
                Word rhs = cword;
                rhs.push_back(x0);
                cat.add_relation({{Rational::one(), lhs}, {Rational(-1), rhs}});
            }
            // b_v xi(0) = xi(A) b_u
            cat.add_relation({{Rational::one(), Word{x0, b(pg.v)}},
                              {Rational(-1), Word{b(pg.u), xa}}});
            // a_v xi(A) = xi(0) a_u
            cat.add_relation({{Rational::one(), Word{xa, a(pg.v)}},
                              {Rational(-1), Word{a(pg.u), x0}}});
            for (int k = 1; k <= n; ++k) {
                // a_k xi(k) = xi(0) a_k
                cat.add_relation({{Rational::one(), Word{pg.xi_obj[k], a(k)}},
                                  {Rational(-1), Word{a(k), x0}}});
                // b_k xi(0) = xi(k) b_k
                cat.add_relation({{Rational::one(), Word{x0, b(k)}},
                                  {Rational(-1), Word{b(k), pg.xi_obj[k]}}});
            }
            out.pairs.push_back(pg);
        }
    }
    if (!cat.build_rules(8192)) throw std::runtime_error("coisoinserter: completion failed");
    return out;
}

CoequifierResult coequifier(const CoisoResult& w, int n, const SetPartition&) {
    CoequifierResult out;
    out.cat = present_star_proj(n);
    PresentedLinearCategory& cat = out.cat;
    auto a = [&](int k) { return cat.gen_by_name("a" + std::to_string(k)); };
    auto b = [&](int k) { return cat.gen_by_name("b" + std::to_string(k)); };
    for (const auto& wp : w.pairs) {
        CoisoResult::PairGens pg = wp;
        std::string tag = "(" + std::to_string(pg.u) + ">" + std::to_string(pg.v) + ")";
        pg.xi_obj.clear();  // collapsed to identities
        pg.xi_arrow = cat.add_generator("xi" + tag + "A", pg.u, pg.v, true, 1);
        // b_v = xi(A) b_u ; a_v xi(A) = a_u
        cat.add_relation({{Rational::one(), Word{b(pg.u), pg.xi_arrow}},
                          {Rational(-1), Word{b(pg.v)}}});
        cat.add_relation({{Rational::one(), Word{pg.xi_arrow, a(pg.v)}},
                          {Rational(-1), Word{a(pg.u)}}});
        out.pairs.push_back(pg);
    }
    if (!cat.build_rules()) throw std::runtime_error("coequifier: completion failed");

    // cone functor C^W -> C^WR: xi(j) -> id, xi(A) -> xi(A), base -> base
    PFunctor cone;
    cone.src = &w.cat;
    cone.tgt = &out.cat;
    for (int i = 0; i < w.cat.nobjects(); ++i) cone.object_map.push_back(i);
    cone.gen_map.resize(w.cat.gens().size());
    for (size_t g = 0; g < w.cat.gens().size(); ++g) {
        const auto& gen = w.cat.gens()[g];
        std::string name = gen.name;
        bool mapped = false;
        // xi(j) and inverses -> identity
        for (const auto& wp : w.pairs)
            for (int j = 0; j <= n && !mapped; ++j)
                if (static_cast<int>(g) == wp.xi_obj[j] ||
                    static_cast<int>(g) == w.cat.gens()[wp.xi_obj[j]].inverse) {
                    cone.gen_map[g] = {{Rational::one(), Word{}}};
                    mapped = true;
                }
        if (!mapped) {
            // same-named generator in the target
            int tg = out.cat.gen_by_name(name);
            cone.gen_map[g] = {{Rational::one(), Word{tg}}};
        }
    }
    out.cone = cone;
    return out;
}

CoequifierResult build_CWR_presentation(int n, const SetPartition& p) {
    CoisoResult w = coisoinserter(n, p);
    return coequifier(w, n, p);
}

CoequalizerDemo coequalizer_free_demo() {
    CoequalizerDemo d;
    d.a2.add_object("1");
    d.a2.add_object("2");
    int ga = d.a2.add_generator("a", 0, 1);
    d.a2.build_rules();

    d.a3.add_object("1");
    d.a3.add_object("2");
    d.a3.add_object("3");
    int gb = d.a3.add_generator("b", 0, 1);
    int gc = d.a3.add_generator("c", 1, 2);
    d.a3.build_rules();

    d.coeq.add_object("X");
    int gx = d.coeq.add_generator("x", 0, 0);
    d.coeq.build_rules();

    d.fb.src = &d.a2;
    d.fb.tgt = &d.a3;
    d.fb.object_map = {0, 1};
    d.fb.gen_map = {{{Rational::one(), Word{gb}}}};
    d.fc.src = &d.a2;
    d.fc.tgt = &d.a3;
    d.fc.object_map = {1, 2};
    d.fc.gen_map = {{{Rational::one(), Word{gc}}}};

    d.cone.src = &d.a3;
    d.cone.tgt = &d.coeq;
    d.cone.object_map = {0, 0, 0};
    d.cone.gen_map = {{{Rational::one(), Word{gx}}}, {{Rational::one(), Word{gx}}}};
    (void)ga;
    return d;
}

PresentedLinearCategory truncated_loop_category(int m) {
    PresentedLinearCategory tm;
    tm.add_object("Y");
    int y = tm.add_generator("y", 0, 0);
    Word ym(m, y);
    tm.add_relation({{Rational::one(), ym}});
    if (!tm.build_rules()) throw std::runtime_error("truncated_loop_category: completion failed");
    return tm;
}

PFunctor induced_to_truncated(const CoequalizerDemo& demo, const PresentedLinearCategory& tm) {
    PFunctor f;
    f.src = &demo.coeq;
    f.tgt = &tm;
    f.object_map = {0};
    f.gen_map = {{{Rational::one(), Word{0}}}};
    return f;
}

EnvelopeSummary additive_karoubi_envelope(const PresentedLinearCategory& cat, int bound) {
    const int no = cat.nobjects();
    std::vector<std::vector<PresentedLinearCategory::HomBasis>> homs(no);
    for (int i = 0; i < no; ++i) {
        homs[i].resize(no);
        for (int j = 0; j < no; ++j) {
            homs[i][j] = cat.hom_basis_bounded(i, j, bound);
            if (!homs[i][j].saturated)
                throw std::runtime_error("envelope: Hom(" + cat.object_name(i) + "," +
                                         cat.object_name(j) + ") does not saturate at the cap");
        }
    }
    // category algebra: basis = (i, j, word index)
    struct Key {
        int i, j, w;
    };
    std::vector<Key> basis;
    std::map<std::tuple<int, int, std::string>, int> index;
    auto word_key = [&](int i, int j, const Word& w) {
        std::string s = std::to_string(i) + "|" + std::to_string(j) + "|";
        for (int g : w) s += std::to_string(g) + ",";
        return std::tuple<int, int, std::string>{i, j, s};
    };
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < no; ++j)
            for (size_t w = 0; w < homs[i][j].words.size(); ++w) {
                index[word_key(i, j, homs[i][j].words[w])] = static_cast<int>(basis.size());
                basis.push_back({i, j, static_cast<int>(w)});
            }
    const int dim = static_cast<int>(basis.size());
    auto expr_coords = [&](int i, int j, const PExpr& e) {
        QVec v(dim);
        for (const auto& t : e) {
            auto it = index.find(word_key(i, j, t.word));
            if (it == index.end())
                throw std::runtime_error("envelope: normal form escaped the saturated basis");
            v[it->second] += t.coeff;
        }
        return v;
    };
    std::vector<std::vector<QVec>> table(dim, std::vector<QVec>(dim, QVec(dim)));
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y) {
            // product: basis[x] o basis[y] (y acts first)
            const Key &kx = basis[x], &ky = basis[y];
            if (ky.j != kx.i) continue;
            Word w = homs[ky.i][ky.j].words[ky.w];
            const Word& wx = homs[kx.i][kx.j].words[kx.w];
            w.insert(w.end(), wx.begin(), wx.end());
            table[x][y] = expr_coords(ky.i, kx.j, cat.normal_form_word(w));
        }
    QVec unit(dim);
    for (int i = 0; i < no; ++i) unit = vec_add(unit, expr_coords(i, i, {{Rational::one(), Word{}}}));
    StructAlgebra T = struct_algebra_from_table(table, unit);

    EnvelopeSummary out;
    for (int i = 0; i < no; ++i) {
        out.hom_dims.emplace_back();
        for (int j = 0; j < no; ++j)
            out.hom_dims.back().push_back(static_cast<int>(homs[i][j].words.size()));
    }
    // primitive idempotents of each End(X) are primitive in T
    std::vector<QVec> idems;
    std::vector<int> idem_obj;
    for (int i = 0; i < no; ++i) {
        // corner algebra End(X) as struct algebra
        const auto& words = homs[i][i].words;
        const int d = static_cast<int>(words.size());
        std::vector<std::vector<QVec>> tt(d, std::vector<QVec>(d, QVec(d)));
        auto coords_end = [&](const PExpr& e) {
            QVec v(d);
            for (const auto& t : e) {
                bool found = false;
                for (int wi = 0; wi < d && !found; ++wi)
                    if (words[wi] == t.word) {
                        v[wi] += t.coeff;
                        found = true;
                    }
                if (!found) throw std::runtime_error("envelope: End normal form escaped basis");
            }
            return v;
        };
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                Word w = words[y];
                w.insert(w.end(), words[x].begin(), words[x].end());
                tt[x][y] = coords_end(cat.normal_form_word(w));
            }
        StructAlgebra endx = struct_algebra_from_table(tt, coords_end({{Rational::one(), Word{}}}));
        for (const auto& e : primitive_idempotent_decomposition(endx)) {
            // embed into T coords
            QVec v(dim);
            for (int wi = 0; wi < d; ++wi)
                if (!e[wi].is_zero()) {
                    auto it = index.find(word_key(i, i, words[wi]));
                    v[it->second] += e[wi];
                }
            idems.push_back(v);
            idem_obj.push_back(i);
        }
    }
    std::vector<int> blocks = block_of_idempotents(T, idems);
    int nblocks = 0;
    for (int b : blocks) nblocks = std::max(nblocks, b + 1);
    out.indecomposable_count = nblocks;
    std::vector<bool> seen(nblocks, false);
    for (size_t t = 0; t < idems.size(); ++t) {
        if (seen[blocks[t]]) continue;
        seen[blocks[t]] = true;
        out.idempotents.push_back({idem_obj[t], idems[t], blocks[t]});
    }
    return out;
}

EnvelopeObject envelope_of_object(int object) {
    EnvelopeObject o;
    o.summands.push_back({object, {{Rational::one(), Word{}}}});
    return o;
}

int envelope_hom_dim(const PresentedLinearCategory& cat, int bound, const EnvelopeObject& a,
                     const EnvelopeObject& b) {
    int total = 0;
    for (const auto& [xa, ea] : a.summands)
        for (const auto& [xb, eb] : b.summands) {
            auto h = cat.hom_basis_bounded(xa, xb, bound);
            if (!h.saturated) throw std::runtime_error("envelope_hom_dim: hom not saturated");
            if (h.words.empty()) continue;
            // span of eb . w . ea over the hom words
            std::vector<QVec> rows;
            auto coords = [&](const PExpr& e) {
                QVec v(static_cast<int>(h.words.size()));
                for (const auto& t : e) {
                    bool found = false;
                    for (size_t wi = 0; wi < h.words.size() && !found; ++wi)
                        if (h.words[wi] == t.word) {
                            v[wi] += t.coeff;
                            found = true;
                        }
                    if (!found)
                        throw std::runtime_error("envelope_hom_dim: escaped the saturated basis");
                }
                return v;
            };
            for (const auto& w : h.words) {
                PExpr mid{{Rational::one(), w}};
                // eb o mid o ea: ea applied first
                PExpr acc;
                for (const auto& t1 : ea)
                    for (const auto& tm : mid)
                        for (const auto& t2 : eb) {
                            Word word = t1.word;
                            word.insert(word.end(), tm.word.begin(), tm.word.end());
                            word.insert(word.end(), t2.word.begin(), t2.word.end());
                            acc.push_back({t1.coeff * tm.coeff * t2.coeff, word});
                        }
                rows.push_back(coords(cat.normal_form(acc)));
            }
            total += Subspace::span(static_cast<int>(h.words.size()), rows).dim();
        }
    return total;
}

std::string PresentedLinearCategory::to_json() const {
    nlohmann::json j;
    j["objects"] = objects_;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : gens_) {
        if (g.inverse >= 0 || g.name.size() < 2 || g.name.substr(g.name.size() - 2) != "^-")
            j["generators"].push_back({{"name", g.name},
                                       {"src", objects_[g.src]},
                                       {"tgt", objects_[g.tgt]},
                                       {"invertible", g.invertible}});
    }
    j["relations"] = nlohmann::json::array();
    for (const auto& rel : relations_) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& t : rel) {
            nlohmann::json names = nlohmann::json::array();
            for (int g : t.word) names.push_back(gens_[g].name);
            jr.push_back({{"coeff", t.coeff.str()}, {"word", names}});
        }
        j["relations"].push_back(jr);
    }
    j["length_cap"] = length_cap;
    return j.dump(2);
}

PresentedLinearCategory PresentedLinearCategory::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PresentedLinearCategory cat;
    for (const auto& o : j.at("objects")) cat.add_object(o.get<std::string>());
    for (const auto& g : j.at("generators"))
        cat.add_generator(g.at("name").get<std::string>(),
                          cat.object_by_name(g.at("src").get<std::string>()),
                          cat.object_by_name(g.at("tgt").get<std::string>()),
                          g.value("invertible", false));
    for (const auto& jr : j.at("relations")) {
        PExpr e;
        for (const auto& t : jr) {
            Word w;
            for (const auto& gn : t.at("word")) w.push_back(cat.gen_by_name(gn.get<std::string>()));
            e.push_back({Rational(t.at("coeff").get<std::string>()), w});
        }
        cat.add_relation(e);
    }
    if (j.contains("length_cap")) cat.length_cap = j["length_cap"].get<int>();
    cat.build_rules();
    return cat;
}

}  // namespace starcat
