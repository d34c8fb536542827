#include "weil/descent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "weil/local_symbols.hpp"

namespace weil {

namespace {

int val2(long x) {
    int k = 0;
    while (x % 2 == 0) {
        x /= 2;
        ++k;
    }
    return k;
}

// Least x in F_q with x^2 = a.
Fq sqrt_or_throw(const FqField& F, Fq a) {
    auto r = F.sqrt(a);
    if (!r) throw Error(ErrorCode::datum_invalid, "no square root in F_q");
    return *r;
}

// Action of sigma_u on additive characters goes through u mod p.
Fq exponent_in_fq(const FqField& F, long u) { return F.from_int(((u % F.p()) + F.p()) % F.p()); }

Mat m_token_on(const WeilModel& w, Fq gamma, Part part) {
    SpToken t{SpToken::Kind::M, FqMat::scalar(*w.space().F, static_cast<std::size_t>(w.space().m), gamma)};
    return w.restrict_to(w.token_image(t), part);
}

std::vector<long> cyclic_powers(const CoeffField& K, long g) {
    std::vector<long> out{1};
    long x = K.reduce_exponent(g);
    while (x != 1) {
        out.push_back(x);
        x = K.reduce_exponent(x * g);
    }
    return out;
}

// Least element of a cyclic group of exponents whose powers give all of it.
long cyclic_generator(const CoeffField& K, const std::vector<long>& group) {
    for (long g : group)
        if (cyclic_powers(K, g).size() == group.size()) return g;
    throw Error(ErrorCode::datum_invalid, "acting group is not cyclic");
}

DescentDatum assemble(const MarkedRep& rep, const std::vector<std::pair<long, Mat>>& items) {
    DescentDatum d;
    d.rep = rep;
    std::vector<std::pair<long, Mat>> sorted = items;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<long> gens;
    for (auto& [u, a] : sorted) {
        d.group.push_back(u);
        d.matrices.push_back(a);
        gens.push_back(u);
    }
    d.target = SubfieldTag(rep.field, gens);
    return d;
}

} // namespace

const Mat& DescentDatum::at(long sigma) const {
    long u = rep.field.reduce_exponent(sigma);
    auto it = std::lower_bound(group.begin(), group.end(), u);
    if (it == group.end() || *it != u) throw Error(ErrorCode::datum_invalid, "automorphism outside the acting group");
    return matrices[static_cast<std::size_t>(it - group.begin())];
}

CheckList certify(const DescentDatum& d) {
    CheckList out;
    const CoeffField& K = d.rep.field;
    out.add("rep defined over the whole field", d.rep.defined_over == SubfieldTag::whole(K));
    bool sizes = d.group.size() == d.matrices.size();
    for (const auto& a : d.matrices) sizes = sizes && a.rows() == d.rep.dim && a.cols() == d.rep.dim;
    out.add("one square matrix per group element", sizes);
    if (!sizes) return out;
    out.add("group closed under composition", subgroup_closure(K, d.group) == d.group);
    out.add("target is the fixed field of the group", SubfieldTag(K, d.group) == d.target);
    bool cocycle = true;
    for (long s : d.group)
        for (long t : d.group) {
            long st = K.reduce_exponent(s * t);
            if (!std::binary_search(d.group.begin(), d.group.end(), st)) {
                cocycle = false;
                continue;
            }
            if (d.at(st) != d.at(s) * d.at(t).apply_aut(s)) cocycle = false;
        }
    out.add("cocycle A_st = A_s s(A_t)", cocycle);
    bool equiv = true;
    for (long s : d.group)
        for (const auto& g : d.rep.images)
            if (d.at(s) * g.apply_aut(s) != g * d.at(s)) equiv = false;
    out.add("equivariance A_s s(G) = G A_s", equiv);
    return out;
}

DescentResult fixed_points(const DescentDatum& d) {
    CheckList cert = certify(d);
    if (!cert.all_passed()) throw Error(ErrorCode::datum_invalid, "descent datum failed certification");
    const CoeffField& K = d.rep.field;
    const CoeffField P = K.prime_field();
    const std::size_t dim = d.rep.dim;
    const std::size_t deg = static_cast<std::size_t>(K.degree());
    const std::size_t nv = dim * deg;

    // v = sum_{i,b} x_{i,b} zeta^b e_i over the prime field; equations A_s s(v) - v = 0
    LinearSystem sys(P, nv);
    for (long s : d.target.generators()) {
        const Mat& a = d.at(s);
        std::vector<Vec> colimg; // image of each prime-field basis vector, as K-coordinates
        colimg.reserve(nv);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t b = 0; b < deg; ++b) {
                CycloNum sz = apply_aut(s, K.basis(static_cast<int>(b)));
                Vec v(dim);
                for (std::size_t r = 0; r < dim; ++r) v[r] = a(r, i) * sz;
                v[i] -= K.basis(static_cast<int>(b));
                colimg.push_back(std::move(v));
            }
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < deg; ++c) {
                SparseRow row;
                for (std::size_t j = 0; j < nv; ++j) {
                    const mpq_class& x = colimg[j][r].coeffs()[c];
                    if (sgn(x) != 0) row.emplace_back(j, P.from_rational(x));
                }
                if (!row.empty()) sys.add_row(row);
            }
    }
    auto ns = sys.nullspace();

    DescentResult res;
    res.target = d.target;
    res.transcript = cert;
    res.transcript.add("fixed space has prime-field dimension dim * [T:prime]",
                       ns.size() == dim * static_cast<std::size_t>(d.target.degree()));

    std::vector<Vec> chosen;
    for (const auto& x : ns) {
        Vec v(dim, K.zero());
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<mpq_class> c(deg);
            for (std::size_t b = 0; b < deg; ++b) c[b] = x[i * deg + b].rational_part();
            v[i] = CycloNum(K, c);
        }
        chosen.push_back(v);
        if (rank_of_vectors(K, chosen) < chosen.size()) chosen.pop_back();
        if (chosen.size() == dim) break;
    }
    if (chosen.size() != dim) throw Error(ErrorCode::rank_deficiency, "fixed vectors do not span over K");
    res.basis = Mat::from_columns(K, chosen);
    Mat binv = res.basis.inverse();

    res.model.field = K;
    res.model.defined_over = d.target;
    res.model.dim = dim;
    res.model.generators = d.rep.generators;
    res.model.label = d.rep.label;
    bool in_target = true, intertwines = true;
    for (const auto& g : d.rep.images) {
        Mat h = binv * g * res.basis;
        in_target = in_target && h.entries_in(d.target);
        intertwines = intertwines && g * res.basis == res.basis * h;
        res.model.images.push_back(std::move(h));
    }
    res.transcript.add("descended images have entries in the target", in_target);
    res.transcript.add("B intertwines the descended model with the original", intertwines);
    res.transcript.add("basis vectors fixed by every r_sigma", [&] {
        for (long s : d.group)
            if (d.at(s) * res.basis.apply_aut(s) != res.basis) return false;
        return true;
    }());
    return res;
}

DescentDatum descent_datum_weil(const WeilModel& w) {
    const FqField& F = *w.space().F;
    const CoeffField& K = w.field();
    const long p = F.p();
    if (K.n() != p) throw Error(ErrorCode::config_invalid, "Weil datum expects coefficients in Q(zeta_p) or F_l[zeta_p]");
    const long h = (p - 1) >> val2(p - 1); // order of the odd part of F_p^x
    MarkedRep rep = w.rep(Part::full);
    std::vector<std::pair<long, Mat>> items;
    for (long u : K.galois_group()) {
        if (mod_pow(u % p, h, p) != 1) continue;
        long y = mod_inverse(u % p, p);
        long gamma = mod_pow(y, (h + 1) / 2, p); // odd-order square root of u^{-1}
        items.emplace_back(u, m_token_on(w, F.from_int(gamma), Part::full).apply_aut(u));
    }
    return assemble(rep, items);
}

DescentDatum descent_datum_even(const WeilModel& w) {
    const FqField& F = *w.space().F;
    const CoeffField& K = w.field();
    if (K.n() != F.p()) throw Error(ErrorCode::config_invalid, "even datum expects coefficients in Q(zeta_p) or F_l[zeta_p]");
    MarkedRep rep = w.rep(Part::even);
    std::vector<std::pair<long, Mat>> items;
    for (long u : K.galois_group()) {
        Fq uq = exponent_in_fq(F, u);
        if (!F.is_square(uq)) continue;
        Fq gamma = sqrt_or_throw(F, F.inv(uq));
        items.emplace_back(u, m_token_on(w, gamma, Part::even).apply_aut(u));
    }
    return assemble(rep, items);
}

DescentDatum cyclic_datum(const MarkedRep& rep, const SubfieldTag& target, long g, const Mat& a_g) {
    const CoeffField& K = rep.field;
    auto pw = cyclic_powers(K, g);
    std::vector<std::pair<long, Mat>> items;
    Mat cur = Mat::identity(K, rep.dim);
    for (long u : pw) {
        items.emplace_back(u, cur);
        cur = a_g * cur.apply_aut(g);
    }
    DescentDatum d = assemble(rep, items);
    if (d.target != target) throw Error(ErrorCode::datum_invalid, "generator does not cut out the target field");
    if (!cur.is_identity()) throw Error(ErrorCode::cocycle_violation, "A_g g(A_g) ... is not the identity");
    return d;
}

// ---------------------------------------------------------------------------
// norm equations

int NormTower::degree() const { return top.relative_degree(base); }

NormTower make_tower(const SubfieldTag& top, const SubfieldTag& base, long generator) {
    if (top.field() != base.field()) throw Error(ErrorCode::bad_tower, "tower fields differ");
    if (!base.is_subfield_of(top)) throw Error(ErrorCode::bad_tower, "base is not contained in top");
    const CoeffField& K = top.field();
    if (!K.has_automorphism(generator) || !base.contains_aut(generator))
        throw Error(ErrorCode::bad_tower, "generator does not fix the base");
    NormTower t{top, base, K.reduce_exponent(generator)};
    // the cosets g^j stab(top) must exhaust stab(base)
    std::vector<long> seen;
    long x = 1;
    for (int j = 0; j < t.degree(); ++j) {
        for (long s : top.stabilizer()) seen.push_back(K.reduce_exponent(x * s));
        x = K.reduce_exponent(x * t.generator);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    if (seen != base.stabilizer()) throw Error(ErrorCode::bad_tower, "generator does not generate Gal(top/base)");
    return t;
}

CycloNum tower_norm(const NormTower& t, const CycloNum& x) {
    const CoeffField& K = t.top.field();
    CycloNum n = K.one();
    long u = 1;
    for (int j = 0; j < t.degree(); ++j) {
        n *= apply_aut(u, x);
        u = K.reduce_exponent(u * t.generator);
    }
    return n;
}

namespace {

using I128 = __int128;

I128 iabs(I128 x) { return x < 0 ? -x : x; }

long to_long_exact(const mpq_class& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw Error(ErrorCode::identity_failure, "integral basis has non-integral coordinates");
    return q.get_num().get_si();
}

// Integer d >= 1 with d^N = v, if any.
std::optional<long> exact_root(I128 v, int N) {
    if (v <= 0) return std::nullopt;
    long d = std::lround(std::pow(static_cast<long double>(v), 1.0L / N));
    for (long c = std::max(1L, d - 1); c <= d + 1; ++c) {
        I128 x = 1;
        for (int i = 0; i < N; ++i) x *= c;
        if (x == v) return c;
    }
    return std::nullopt;
}

NormSearch search_rational(const NormTower& t, long bound, std::size_t max_candidates) {
    const CoeffField& K = t.top.field();
    const int N = t.degree();
    const std::size_t D = static_cast<std::size_t>(K.degree());
    const auto basis = subfield_basis(t.top);
    const std::size_t r = basis.size();
    std::vector<long> auts;
    for (long u = 1, j = 0; j < N; ++j, u = K.reduce_exponent(u * t.generator)) auts.push_back(u);

    // conj[j][i]: integer coordinates of sigma^j(beta_i)
    std::vector<std::vector<std::vector<long>>> conj(N, std::vector<std::vector<long>>(r, std::vector<long>(D)));
    long maxc = 0;
    for (int j = 0; j < N; ++j)
        for (std::size_t i = 0; i < r; ++i) {
            CycloNum x = apply_aut(auts[j], basis[i]);
            for (std::size_t k = 0; k < D; ++k) {
                conj[j][i][k] = to_long_exact(x.coeffs()[k]);
                maxc = std::max(maxc, std::labs(conj[j][i][k]));
            }
        }
    const auto& table = K.reduction_table();
    std::vector<std::vector<long>> red(table.size(), std::vector<long>(D));
    long maxred = 1;
    for (std::size_t k = 0; k < table.size(); ++k)
        for (std::size_t c = 0; c < D; ++c) {
            red[k][c] = to_long_exact(table[k][c]);
            maxred = std::max(maxred, std::labs(red[k][c]));
        }

    NormSearch out;
    std::vector<long> a(r, 0);
    std::vector<I128> prod(D), raw(2 * D), cj(D);
    const I128 limit = static_cast<I128>(1) << 120;

    auto exact_check = [&]() -> std::optional<CycloNum> {
        CycloNum x = K.zero();
        for (std::size_t i = 0; i < r; ++i)
            if (a[i] != 0) x += basis[i].scaled(mpq_class(a[i]));
        CycloNum n = tower_norm(t, x);
        if (!n.is_rational() || sgn(n.rational_part()) >= 0 || n.rational_part().get_den() != 1) return std::nullopt;
        mpz_class v = -n.rational_part().get_num();
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(N)) == 0) return std::nullopt;
        if (root > bound) return std::nullopt;
        return x.scaled(mpq_class(1) / mpq_class(root));
    };

    auto test = [&]() -> std::optional<CycloNum> {
        bool overflow = false;
        std::fill(prod.begin(), prod.end(), 0);
        prod[0] = 1;
        for (int j = 0; j < N && !overflow; ++j) {
            I128 mc = 0, mp = 0;
            for (std::size_t k = 0; k < D; ++k) {
                I128 s = 0;
                for (std::size_t i = 0; i < r; ++i)
                    if (a[i] != 0) s += static_cast<I128>(a[i]) * conj[j][i][k];
                cj[k] = s;
                mc = std::max(mc, iabs(s));
                mp = std::max(mp, iabs(prod[k]));
            }
            if (mc != 0 && mp > limit / mc / static_cast<I128>(D) / static_cast<I128>(maxred * static_cast<long>(D) + 1)) {
                overflow = true;
                break;
            }
            std::fill(raw.begin(), raw.end(), 0);
            for (std::size_t x = 0; x < D; ++x) {
                if (prod[x] == 0) continue;
                for (std::size_t y = 0; y < D; ++y) raw[x + y] += prod[x] * cj[y];
            }
            for (std::size_t k = 0; k < D; ++k) prod[k] = raw[k];
            for (std::size_t k = D; k + 1 < 2 * D; ++k) {
                if (raw[k] == 0) continue;
                for (std::size_t c = 0; c < D; ++c) prod[c] += raw[k] * red[k][c];
            }
        }
        if (overflow) return exact_check();
        for (std::size_t k = 1; k < D; ++k)
            if (prod[k] != 0) return std::nullopt;
        auto d = exact_root(-prod[0], N);
        if (!d || *d > bound) return std::nullopt;
        return exact_check();
    };

    // shells of fixed L1 weight, each in lexicographic order of coefficients
    bool stop = false;
    std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long rem) {
        if (stop) return;
        if (pos + 1 == r) {
            if (rem > bound) return;
            for (long v : {-rem, rem}) {
                a[pos] = v;
                if (out.candidates >= max_candidates) {
                    stop = true;
                    return;
                }
                ++out.candidates;
                if (auto lam = test()) {
                    out.lambda = lam;
                    stop = true;
                    return;
                }
                if (rem == 0) break;
            }
            a[pos] = 0;
            return;
        }
        long lim = std::min(rem, bound);
        for (long v = -lim; v <= lim && !stop; ++v) {
            a[pos] = v;
            rec(pos + 1, rem - std::labs(v));
        }
        a[pos] = 0;
    };
    const long max_weight = bound * static_cast<long>(r);
    for (long w = 1; w <= max_weight && !stop; ++w) {
        out.shell_reached = w;
        rec(0, w);
    }
    out.exhausted = !stop;
    return out;
}

NormSearch search_modular(const NormTower& t, std::size_t max_candidates) {
    const CoeffField& K = t.top.field();
    const long ell = K.characteristic();
    const auto basis = subfield_basis(t.top);
    const std::size_t r = basis.size();
    const CycloNum minus_one = K.from_int(-1);
    NormSearch out;
    std::vector<long> a(r, 0);
    while (true) {
        // next tuple in [0, ell)^r, least significant coordinate last
        std::size_t i = r;
        while (i > 0) {
            --i;
            if (++a[i] < ell) break;
            a[i] = 0;
            if (i == 0) {
                out.exhausted = true;
                return out;
            }
        }
        if (out.candidates >= max_candidates) return out;
        ++out.candidates;
        CycloNum x = K.zero();
        for (std::size_t k = 0; k < r; ++k)
            if (a[k] != 0) x += basis[k].scaled(mpq_class(a[k]));
        if (tower_norm(t, x) == minus_one) {
            out.lambda = x;
            return out;
        }
    }
}

} // namespace

NormSearch search_norm_minus_one(const NormTower& t, long bound, std::size_t max_candidates) {
    if (bound < 1) throw Error(ErrorCode::config_invalid, "search bound must be positive");
    if (t.top.field().kind() == FieldKind::modular) return search_modular(t, max_candidates);
    return search_rational(t, bound, max_candidates);
}

CycloNum solve_norm_minus_one(const NormTower& t, long bound, std::size_t max_candidates) {
    NormSearch s = search_norm_minus_one(t, bound, max_candidates);
    if (!s.lambda)
        throw Error(ErrorCode::not_found_within_bound,
                    "no element of norm -1 among " + std::to_string(s.candidates) + " candidates");
    return *s.lambda;
}

// ---------------------------------------------------------------------------
// odd part

ObstructionReport odd_obstruction_check(const SymplecticSpace& s, long search_bound, std::size_t max_candidates) {
    const FqField& F = *s.F;
    ObstructionReport rep;
    rep.p = F.p();
    rep.f = F.f();
    const long p = rep.p;
    rep.k = val2(p - 1);
    rep.a = (rep.f % 2 == 0) ? 1 : 2;
    rep.k_a = rep.k - rep.a + 1;

    const CoeffField K = CoeffField::rational(p);
    const long g0 = primitive_root(p);
    const long sigma = mod_pow(g0, (p - 1) >> rep.k, p); // generates the 2-part of Gal(K/Q)
    const long odd_gen = mod_pow(g0, 1L << rep.k, p);
    rep.tau = mod_pow(sigma, rep.a, p);
    rep.L = SubfieldTag(K, {odd_gen});
    rep.L0 = SubfieldTag(K, {odd_gen, rep.tau});
    if (rep.k_a <= 0) {
        rep.transcript.add("tau is trivial on L, no obstruction", rep.tau == 1 || rep.L.contains_aut(rep.tau));
        return rep;
    }
    const long N = 1L << rep.k_a;

    WeilModel w(s, AdditiveCharacter(F, K));
    const Fq u_tau = F.from_int(rep.tau);
    const Fq gamma = sqrt_or_throw(F, F.inv(u_tau));
    const Mat a_tau = m_token_on(w, gamma, Part::odd).apply_aut(rep.tau);
    MarkedRep odd = w.rep(Part::odd);
    bool equiv = true;
    for (const auto& g : odd.images) equiv = equiv && a_tau * g.apply_aut(rep.tau) == g * a_tau;
    rep.transcript.add("A_tau tau(G) = G A_tau on the odd part", equiv);

    // A_{tau^j} for j <= N
    std::vector<Mat> pw{Mat::identity(K, odd.dim)};
    for (long j = 1; j <= N; ++j) pw.push_back(a_tau * pw.back().apply_aut(rep.tau));
    rep.power_is_minus_id = pw[static_cast<std::size_t>(N)] == Mat::scalar(K.from_int(-1), odd.dim);
    rep.transcript.add("r_tau^(2^k_a) = -Id", rep.power_is_minus_id);
    rep.transcript.add("tau has order 2^k_a on K", multiplicative_order(rep.tau, p) == N);

    // CM: L not real (complex conjugation acts), tau acts on L as complex conjugation
    const bool real = rep.L.contains_aut(p - 1);
    const bool tau_is_cc = rep.L.contains_aut(K.reduce_exponent(rep.tau * (p - 1)));
    rep.cm = rep.k_a == 1 && !real && tau_is_cc;
    rep.transcript.add("L is CM with tau as complex conjugation", rep.cm);

    NormTower tw = make_tower(rep.L, rep.L0, rep.tau);
    rep.search = search_norm_minus_one(tw, search_bound, max_candidates);
    rep.transcript.add("no norm -1 element found in the bounded search", !rep.search.lambda);

    // twisted algebra: b_i r_tau^j with b_i an R-basis of L
    const SubfieldTag R = rep.f % 2 == 1 ? subfield_of_values(K, {gauss_sum(K, p)}) : SubfieldTag::prime(K);
    RelativeBasis rb(rep.L, R);
    struct Elem {
        CycloNum b;
        long j;
    };
    std::vector<Elem> elems;
    for (long j = 0; j < N; ++j)
        for (const auto& b : rb.basis()) elems.push_back({b, j});
    auto tau_pow = [&](long j) { return mod_pow(rep.tau, j, p); };
    auto as_map = [&](const CycloNum& c, long j, bool negate) {
        SemilinearMap m;
        Mat x = pw[static_cast<std::size_t>(j)].scaled(c);
        m.parts.emplace(tau_pow(j), negate ? -x : x);
        return m;
    };
    bool structure = true;
    for (const auto& x : elems)
        for (const auto& y : elems) {
            SemilinearMap got = semilinear_product(as_map(x.b, x.j, false), as_map(y.b, y.j, false));
            long j = x.j + y.j;
            bool wrap = j >= N;
            SemilinearMap want = as_map(x.b * apply_aut(tau_pow(x.j), y.b), j % N, wrap);
            if (got.parts.size() != want.parts.size()) {
                structure = false;
                continue;
            }
            for (const auto& [u, m] : want.parts) {
                auto it = got.parts.find(u);
                if (it == got.parts.end() || it->second != m) structure = false;
            }
        }
    // independence over R: within each tau^j-part the elements are b_i times a fixed nonzero matrix
    RelativeBasis kr(R);
    std::vector<Vec> coords;
    for (const auto& b : rb.basis()) coords.push_back(kr.coords(b));
    const bool independent = rank_of_vectors(K, coords) == rb.basis().size();
    rep.twisted_algebra_dim = elems.size();
    rep.twisted_algebra_ok = structure && independent &&
                             rep.twisted_algebra_dim == static_cast<std::size_t>(N) * rb.basis().size();
    rep.transcript.add("twisted algebra L[r_tau] has the expected structure constants", structure);
    rep.transcript.add("twisted algebra dimension 2^k_a [L:R]", rep.twisted_algebra_ok);

    rep.obstruction = rep.power_is_minus_id && equiv && (rep.cm || !rep.search.lambda);
    return rep;
}

CoeffField odd_ambient_field(long p, long ell) {
    if (ell != 0) return CoeffField::modular(p, ell);
    return p % 4 == 1 ? CoeffField::rational(4 * p) : CoeffField::rational(p);
}

OddRealisation realise_odd(const SymplecticSpace& s, long ell, long norm_bound) {
    const FqField& F = *s.F;
    const long p = F.p();
    const CoeffField K = odd_ambient_field(p, ell);
    WeilModel w(s, AdditiveCharacter(F, K));
    MarkedRep odd = w.rep(Part::odd);

    OddRealisation out;
    if (ell == 0) {
        const CycloNum root_pstar = gauss_sum(K, p);
        out.character_field = F.f() % 2 == 1 ? subfield_of_values(K, {root_pstar}) : SubfieldTag::prime(K);
        if (F.f() % 2 == 1 && p % 4 == 3) {
            out.target = out.character_field;
        } else {
            CycloNum root_minus_p = p % 4 == 1 ? root_pstar * K.zeta(p) : root_pstar;
            std::vector<CycloNum> gens{root_minus_p};
            if (F.f() % 2 == 1) gens.push_back(root_pstar);
            out.target = subfield_of_values(K, gens);
        }
    } else {
        out.character_field = character_field(odd).tag;
        out.target = out.character_field;
    }
    out.schur_index = out.target.relative_degree(out.character_field);

    const auto& stab = out.target.stabilizer();
    const long g = cyclic_generator(K, stab);
    out.generator = g;
    const Fq ug = exponent_in_fq(F, g);
    const Fq alpha = sqrt_or_throw(F, F.inv(ug));
    Mat a_g = m_token_on(w, alpha, Part::odd).apply_aut(g);

    // P = A_g g(A_g) ... g^{N-1}(A_g) is +-Id; a norm -1 scalar fixes the sign
    const auto pw = cyclic_powers(K, g);
    Mat prod = Mat::identity(K, odd.dim);
    for (std::size_t j = 0; j < pw.size(); ++j) prod = a_g * prod.apply_aut(g);
    if (!prod.is_identity()) {
        if (prod != Mat::scalar(K.from_int(-1), odd.dim))
            throw Error(ErrorCode::identity_failure, "cyclic product is not +-Id");
        NormTower t = make_tower(SubfieldTag::whole(K), out.target, g);
        out.lambda = solve_norm_minus_one(t, norm_bound);
        a_g = a_g.scaled(*out.lambda);
    }
    DescentDatum d = cyclic_datum(odd, out.target, g, a_g);
    out.result = fixed_points(d);
    return out;
}

} // namespace weil
