#include "starcat/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace starcat {

void Quiver::validate() const {
    std::set<std::string> labels;
    for (const auto& a : arrows) {
        if (a.src < 0 || a.src >= vertex_count || a.tgt < 0 || a.tgt >= vertex_count)
            throw std::invalid_argument("Quiver: arrow endpoint out of range");
        if (!labels.insert(a.label).second)
            throw std::invalid_argument("Quiver: duplicate arrow label " + a.label);
    }
}

int Quiver::arrow_by_label(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return static_cast<int>(i);
    throw std::invalid_argument("Quiver: unknown arrow label " + label);
}

namespace {

// All paths of length < cap, ordered by (length, lex on arrow ids).
std::vector<Path> enumerate_paths(const Quiver& q, int cap) {
    std::vector<Path> out;
    for (int v = 0; v < q.vertex_count; ++v) out.push_back(Path{{}, v, v});
    std::vector<Path> frontier = out;
    for (int len = 1; len < cap; ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
                if (q.arrows[a].src == p.tgt) {
                    Path ext = p;
                    ext.word.push_back(a);
                    ext.tgt = q.arrows[a].tgt;
                    next.push_back(ext);
                }
        std::sort(next.begin(), next.end(),
                  [](const Path& a, const Path& b) { return a.word < b.word; });
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::string path_name(const Quiver& q, const Path& p) {
    if (p.word.empty()) return "e" + std::to_string(p.src);
    std::string s;
    // composition order: last applied arrow first (matches b1a1 etc.)
    for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) s += q.arrows[*it].label;
    return s;
}

}  // namespace

FiniteDimAlgebra algebra_from_presentation(const AlgebraPresentation& pres) {
    pres.quiver.validate();
    if (pres.arrow_ideal_nilpotency < 1)
        throw std::invalid_argument("presentation: nilpotency must be >= 1");
    for (const auto& rel : pres.relations) {
        if (rel.empty()) continue;
        for (const auto& t : rel)
            if (t.path.src != rel[0].path.src || t.path.tgt != rel[0].path.tgt)
                throw std::invalid_argument("presentation: relation not homogeneous by (src,tgt)");
    }

    const Quiver& q = pres.quiver;
    const int cap = pres.arrow_ideal_nilpotency;
    std::vector<Path> paths = enumerate_paths(q, cap);
    const int np = static_cast<int>(paths.size());
    std::map<std::vector<int>, int> path_id;
    for (int i = 0; i < np; ++i) path_id[paths[i].word] = i;

    // Ideal spanned by all two-sided shifts of the relations, truncated at
    // the nilpotency cap. Column order: paths descending by (length, lex) so
    // that RREF eliminates the lex-greatest representative of each class.
    auto col_of = [&](int pid) { return np - 1 - pid; };
    auto pid_of = [&](int col) { return np - 1 - col; };

    std::vector<QVec> ideal_rows;
    for (const auto& rel : pres.relations) {
        if (rel.empty()) continue;
        const int s = rel[0].path.src, t = rel[0].path.tgt;
        for (const auto& left : paths) {    // u: postcomposed, src(u) = t
            if (left.src != t) continue;
            for (const auto& right : paths) {  // v: precomposed, tgt(v) = s
                if (right.tgt != s) continue;
                QVec row(np);
                bool nonzero = false;
                for (const auto& term : rel) {
                    std::vector<int> w = right.word;
                    w.insert(w.end(), term.path.word.begin(), term.path.word.end());
                    w.insert(w.end(), left.word.begin(), left.word.end());
                    if (static_cast<int>(w.size()) >= cap) continue;  // lies in R^cap
                    auto it = path_id.find(w);
                    if (it == path_id.end())
                        throw std::logic_error("presentation: malformed relation path");
                    row[col_of(it->second)] += term.coeff;
                    nonzero = true;
                }
                if (nonzero && !vec_is_zero(row)) ideal_rows.push_back(row);
            }
        }
    }

    Subspace ideal = Subspace::span(np, ideal_rows);

    std::vector<bool> eliminated(np, false);
    for (int c : ideal.pivots()) eliminated[pid_of(c)] = true;
    for (int v = 0; v < q.vertex_count; ++v)
        if (eliminated[v])
            throw std::invalid_argument("presentation: inconsistent relations force e_v = 0");

    FiniteDimAlgebra alg;
    alg.quiver = q;
    std::vector<int> basis_pid;
    for (int i = 0; i < np; ++i)
        if (!eliminated[i]) basis_pid.push_back(i);
    alg.dim = static_cast<int>(basis_pid.size());
    std::vector<int> pid_to_basis(np, -1);
    for (int b = 0; b < alg.dim; ++b) pid_to_basis[basis_pid[b]] = b;

    for (int b = 0; b < alg.dim; ++b) {
        const Path& p = paths[basis_pid[b]];
        alg.basis.push_back({p, path_name(q, p), p.src, p.tgt});
    }
    alg.idempotent.resize(q.vertex_count);
    for (int v = 0; v < q.vertex_count; ++v) alg.idempotent[v] = pid_to_basis[v];
    for (int b = 0; b < alg.dim; ++b)
        if (alg.basis[b].path.length() > 0) alg.radical_basis.push_back(b);

    // reduction of every enumerated path to basis coordinates
    for (int i = 0; i < np; ++i) {
        QVec row(np);
        row[col_of(i)] = Rational::one();
        QVec red = ideal.reduce(row);
        QVec coords(alg.dim);
        for (int c = 0; c < np; ++c)
            if (!red[c].is_zero()) {
                int b = pid_to_basis[pid_of(c)];
                if (b < 0) throw std::logic_error("presentation: reduction hit eliminated path");
                coords[b] = red[c];
            }
        alg.path_reduction_[{paths[i].src, paths[i].word}] = coords;
    }

    alg.mult.assign(alg.dim, std::vector<LinComb>(alg.dim));
    for (int i = 0; i < alg.dim; ++i)
        for (int j = 0; j < alg.dim; ++j) {
            const Path& pi = alg.basis[i].path;
            const Path& pj = alg.basis[j].path;
            if (pj.tgt != pi.src) continue;  // i after j must compose
            std::vector<int> w = pj.word;
            w.insert(w.end(), pi.word.begin(), pi.word.end());
            QVec coords = alg.reduce_path(Path{w, pj.src, pi.tgt});
            LinComb lc;
            for (int k = 0; k < alg.dim; ++k)
                if (!coords[k].is_zero()) lc.push_back({k, coords[k]});
            alg.mult[i][j] = lc;
        }
    return alg;
}

std::optional<int> FiniteDimAlgebra::basis_index_by_name(const std::string& name) const {
    for (int i = 0; i < dim; ++i)
        if (basis[i].name == name) return i;
    return std::nullopt;
}

QVec FiniteDimAlgebra::coords_of_basis(int i) const {
    QVec v(dim);
    v[i] = Rational::one();
    return v;
}

QVec FiniteDimAlgebra::unit() const {
    QVec v(dim);
    for (int e : idempotent) v[e] = Rational::one();
    return v;
}

QVec FiniteDimAlgebra::mul_basis(int i, int j) const {
    QVec v(dim);
    for (const auto& [k, c] : mult[i][j]) v[k] += c;
    return v;
}

QVec FiniteDimAlgebra::mul(const QVec& x, const QVec& y) const {
    QVec out(dim);
    for (int i = 0; i < dim; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (y[j].is_zero()) continue;
            for (const auto& [k, c] : mult[i][j]) out[k] += x[i] * y[j] * c;
        }
    }
    return out;
}

QVec FiniteDimAlgebra::reduce_path(const Path& p) const {
    auto it = path_reduction_.find({p.src, p.word});
    if (it != path_reduction_.end()) return it->second;
    return QVec(dim);  // length >= nilpotency cap
}

std::vector<int> FiniteDimAlgebra::peirce(int i, int j) const {
    std::vector<int> out;
    for (int b = 0; b < dim; ++b)
        if (basis[b].tgt == i && basis[b].src == j) out.push_back(b);
    return out;
}

StructAlgebra FiniteDimAlgebra::as_struct_algebra() const {
    std::vector<std::vector<QVec>> table(dim, std::vector<QVec>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) table[i][j] = mul_basis(i, j);
    return struct_algebra_from_table(table, unit());
}

bool FiniteDimAlgebra::check_associativity() const { return as_struct_algebra().is_associative(); }

bool FiniteDimAlgebra::check_idempotents() const {
    const QVec one = unit();
    for (int i = 0; i < dim; ++i) {
        QVec b = coords_of_basis(i);
        if (mul(one, b) != b || mul(b, one) != b) return false;
    }
    for (int v = 0; v < vertex_count(); ++v)
        for (int w = 0; w < vertex_count(); ++w) {
            QVec p = mul_basis(idempotent[v], idempotent[w]);
            QVec expect(dim);
            if (v == w) expect[idempotent[v]] = Rational::one();
            if (p != expect) return false;
        }
    return true;
}

int FiniteDimAlgebra::radical_nilpotency_degree() const {
    std::vector<QVec> gens;
    for (int b : radical_basis) gens.push_back(coords_of_basis(b));
    Subspace rad = Subspace::span(dim, gens);
    Subspace cur = rad;
    int deg = 1;
    while (cur.dim() > 0) {
        std::vector<QVec> next_gens;
        for (const auto& x : cur.basis())
            for (const auto& y : rad.basis()) next_gens.push_back(mul(x, y));
        cur = Subspace::span(dim, next_gens);
        ++deg;
        if (deg > dim + 2) throw std::runtime_error("radical not nilpotent");
    }
    return deg;
}

std::pair<std::vector<int>, int> radical_and_nilpotency(const FiniteDimAlgebra& a) {
    return {a.radical_basis, a.radical_nilpotency_degree()};
}

namespace {

Quiver star_quiver(int n) {
    Quiver q;
    q.vertex_count = n + 1;
    for (int k = 1; k <= n; ++k) q.arrows.push_back({"a" + std::to_string(k), 0, k});
    for (int k = 1; k <= n; ++k) q.arrows.push_back({"b" + std::to_string(k), k, 0});
    return q;
}

Path arrow_path(const Quiver& q, int a) { return Path{{a}, q.arrows[a].src, q.arrows[a].tgt}; }

// path "x after y": apply y then x
Path compose_paths(const Quiver& q, const Path& x, const Path& y) {
    if (y.tgt != x.src) throw std::invalid_argument("compose_paths: not composable");
    Path p;
    p.word = y.word;
    p.word.insert(p.word.end(), x.word.begin(), x.word.end());
    p.src = y.src;
    p.tgt = x.tgt;
    (void)q;
    return p;
}

}  // namespace

AlgebraPresentation zigzag_presentation(int n) {
    if (n < 1) throw std::invalid_argument("zigzag: n must be positive");
    AlgebraPresentation pres;
    pres.quiver = star_quiver(n);
    pres.arrow_ideal_nilpotency = 3;
    const Quiver& q = pres.quiver;
    auto A = [&](int k) { return arrow_path(q, k - 1); };
    auto B = [&](int k) { return arrow_path(q, n + k - 1); };
    // a_j b_i = 0 for i != j (apply b_i, then a_j)
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
                pres.relations.push_back({{Rational::one(), compose_paths(q, A(j), B(i))}});
    // b_k a_k = b_1 a_1 for k >= 2
    for (int k = 2; k <= n; ++k)
        pres.relations.push_back({{Rational::one(), compose_paths(q, B(k), A(k))},
                                  {Rational(-1), compose_paths(q, B(1), A(1))}});
    return pres;
}

AlgebraPresentation star_quotient_presentation(int n) {
    AlgebraPresentation pres = zigzag_presentation(n);
    const Quiver& q = pres.quiver;
    auto A = [&](int k) { return arrow_path(q, k - 1); };
    auto B = [&](int k) { return arrow_path(q, n + k - 1); };
    // kill the leaf 2-cycles c_k = a_k b_k
    for (int k = 1; k <= n; ++k)
        pres.relations.push_back({{Rational::one(), compose_paths(q, A(k), B(k))}});
    return pres;
}

namespace {

void prettify_star_names(FiniteDimAlgebra& alg, int n) {
    // rename the common 2-cycle class b_1 a_1 to "c" and leaf loops to "ck"
    for (auto& b : alg.basis) {
        if (b.path.length() != 2) continue;
        if (b.src == 0 && b.tgt == 0) b.name = "c";
        if (b.src != 0 && b.src == b.tgt) b.name = "c" + std::to_string(b.src);
    }
    (void)n;
}

}  // namespace

FiniteDimAlgebra build_zigzag(int n) {
    FiniteDimAlgebra alg = algebra_from_presentation(zigzag_presentation(n));
    prettify_star_names(alg, n);
    return alg;
}

FiniteDimAlgebra build_star_quotient(int n) {
    FiniteDimAlgebra alg = algebra_from_presentation(star_quotient_presentation(n));
    prettify_star_names(alg, n);
    return alg;
}

AlgebraPresentation remark_algebra_presentation() {
    AlgebraPresentation pres;
    Quiver q;
    q.vertex_count = 3;
    q.arrows.push_back({"a1", 0, 1});
    q.arrows.push_back({"b1", 1, 0});
    q.arrows.push_back({"a2", 0, 2});
    q.arrows.push_back({"b2", 2, 0});
    pres.quiver = q;
    pres.arrow_ideal_nilpotency = 4;
    return pres;
}

FiniteDimAlgebra build_remark_algebra() {
    return algebra_from_presentation(remark_algebra_presentation());
}

std::vector<QVec> quotient_map(const FiniteDimAlgebra& from, const FiniteDimAlgebra& to) {
    std::vector<QVec> img;
    for (int i = 0; i < from.dim; ++i) img.push_back(to.reduce_path(from.basis[i].path));
    return img;
}

std::string presentation_to_json(const AlgebraPresentation& p) {
    nlohmann::json j;
    j["vertices"] = p.quiver.vertex_count;
    j["arrows"] = nlohmann::json::array();
    for (const auto& a : p.quiver.arrows)
        j["arrows"].push_back({{"label", a.label}, {"src", a.src}, {"tgt", a.tgt}});
    j["relations"] = nlohmann::json::array();
    for (const auto& rel : p.relations) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& t : rel) {
            nlohmann::json labels = nlohmann::json::array();
            for (int a : t.path.word) labels.push_back(p.quiver.arrows[a].label);
            jr.push_back({{"coeff", t.coeff.str()}, {"path", labels}});
        }
        j["relations"].push_back(jr);
    }
    j["nilpotency"] = p.arrow_ideal_nilpotency;
    return j.dump(2);
}

AlgebraPresentation presentation_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    AlgebraPresentation p;
    p.quiver.vertex_count = j.at("vertices").get<int>();
    for (const auto& ja : j.at("arrows"))
        p.quiver.arrows.push_back(
            {ja.at("label").get<std::string>(), ja.at("src").get<int>(), ja.at("tgt").get<int>()});
    p.quiver.validate();
    p.arrow_ideal_nilpotency = j.at("nilpotency").get<int>();
    for (const auto& jr : j.at("relations")) {
        std::vector<PathTerm> rel;
        for (const auto& jt : jr) {
            PathTerm t;
            t.coeff = Rational(jt.at("coeff").get<std::string>());
            Path path;
            bool first = true;
            for (const auto& jl : jt.at("path")) {
                int a = p.quiver.arrow_by_label(jl.get<std::string>());
                if (first) {
                    path.src = p.quiver.arrows[a].src;
                    first = false;
                } else if (p.quiver.arrows[a].src != path.tgt) {
                    throw std::invalid_argument("presentation json: non-composable path");
                }
                path.word.push_back(a);
                path.tgt = p.quiver.arrows[a].tgt;
            }
            if (path.word.empty()) throw std::invalid_argument("presentation json: empty path");
            t.path = path;
            rel.push_back(t);
        }
        p.relations.push_back(rel);
    }
    return p;
}

}  // namespace starcat
