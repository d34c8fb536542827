#include "weil/theta.hpp"

#include <algorithm>

namespace weil {

namespace {

MarkedRep make_rep(const CoeffField& K, std::size_t dim, const std::vector<std::string>& names,
                   const std::vector<Mat>& images) {
    MarkedRep r;
    r.field = K;
    r.defined_over = SubfieldTag::whole(K);
    r.dim = dim;
    r.generators = names;
    r.images = images;
    return r;
}

Mat hcat(const CoeffField& K, std::size_t rows, const std::vector<Mat>& parts) {
    std::size_t cols = 0;
    for (const auto& p : parts) cols += p.cols();
    Mat out(K, rows, cols);
    std::size_t c0 = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) out(i, c0 + j) = p(i, j);
        c0 += p.cols();
    }
    return out;
}

std::size_t col_rank(const Mat& a) { return a.cols() == 0 ? 0 : rank(a); }

// Nullspace of the stacked rows of `maps` (each k x n), as columns.
Mat common_kernel(const CoeffField& K, std::size_t n, const std::vector<Mat>& maps) {
    LinearSystem sys(K, n);
    for (const auto& f : maps)
        for (std::size_t r = 0; r < f.rows(); ++r) {
            SparseRow row;
            for (std::size_t c = 0; c < n; ++c)
                if (!f(r, c).is_zero()) row.emplace_back(c, f(r, c));
            if (!row.empty()) sys.add_row(row);
        }
    auto ns = sys.nullspace();
    return ns.empty() ? Mat(K, n, 0) : Mat::from_columns(K, ns);
}

bool stable_under(const Mat& U, const std::vector<Mat>& gens) {
    const std::size_t r = col_rank(U);
    for (const auto& g : gens)
        if (col_rank(hcat(U.field(), U.rows(), {U, g * U})) != r) return false;
    return true;
}

// Coordinates of x in the span of `basis` (all the same shape); throws if outside.
Vec coordinates(const std::vector<Mat>& basis, const Mat& x) {
    const CoeffField& K = x.field();
    const std::size_t cells = x.rows() * x.cols();
    Mat a(K, cells, basis.size());
    Vec b(cells);
    for (std::size_t e = 0; e < cells; ++e) {
        for (std::size_t j = 0; j < basis.size(); ++j) a(e, j) = basis[j](e / x.cols(), e % x.cols());
        b[e] = x(e / x.cols(), e % x.cols());
    }
    Vec c;
    if (!solve(a, b, c)) throw Error(ErrorCode::identity_failure, "element outside the spanned space");
    return c;
}

// H2 acting on a space of H1-maps by post-composition, in the given basis.
MarkedRep postcomposition_rep(const CommutingPair& pair, const std::vector<Mat>& basis) {
    const CoeffField& K = pair.field;
    std::vector<Mat> images;
    for (const auto& g : pair.h2) {
        Mat m(K, basis.size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Vec c = coordinates(basis, g * basis[i]);
            for (std::size_t j = 0; j < basis.size(); ++j) m(j, i) = c[j];
        }
        images.push_back(std::move(m));
    }
    return make_rep(K, basis.size(), pair.h2_names, images);
}

bool reps_isomorphic(const MarkedRep& a, const MarkedRep& b) {
    if (a.dim != b.dim) return false;
    if (a.dim == 0) return true;
    return iso_test(a, b).has_value();
}

} // namespace

MarkedRep CommutingPair::h1_rep() const { return make_rep(field, dim, h1_names, h1); }
MarkedRep CommutingPair::h2_rep() const { return make_rep(field, dim, h2_names, h2); }

CheckList check_commuting(const CommutingPair& pair) {
    CheckList out;
    bool shapes = true, commute = true;
    for (const auto* list : {&pair.h1, &pair.h2})
        for (const auto& g : *list) shapes = shapes && g.rows() == pair.dim && g.cols() == pair.dim && g.field() == pair.field;
    out.add("generator shapes match the space", shapes);
    if (!shapes) return out;
    for (const auto& a : pair.h1)
        for (const auto& b : pair.h2) commute = commute && a * b == b * a;
    out.add("H1 and H2 generators commute", commute);
    out.add("generator images invertible", pair.h1_rep().images_invertible() && pair.h2_rep().images_invertible());
    return out;
}

CommutingPair center_pair(const WeilModel& w) {
    CommutingPair p;
    p.field = w.field();
    p.dim = w.dim();
    p.h1_names = {"parity"};
    p.h1 = {w.parity()};
    MarkedRep full = w.rep(Part::full);
    p.h2_names = full.generators;
    p.h2 = full.images;
    return p;
}

CommutingPair transport(const CommutingPair& pair, const Mat& basis, const SubfieldTag& over) {
    CommutingPair out = pair;
    Mat binv = basis.inverse();
    for (auto* list : {&out.h1, &out.h2})
        for (auto& g : *list) {
            g = binv * g * basis;
            if (!g.entries_in(over)) throw Error(ErrorCode::field_mismatch, "transported matrix leaves the subfield");
        }
    return out;
}

MarkedRep character_rep(const CommutingPair& pair, const std::vector<CycloNum>& values) {
    if (values.size() != pair.h1.size()) throw Error(ErrorCode::config_invalid, "one value per H1 generator");
    std::vector<Mat> images;
    for (const auto& v : values) images.push_back(Mat::scalar(v, 1));
    return make_rep(pair.field, 1, pair.h1_names, images);
}

std::vector<MarkedRep> sign_characters(const CommutingPair& pair) {
    const CoeffField& K = pair.field;
    return {character_rep(pair, {K.one()}), character_rep(pair, {K.from_int(-1)})};
}

IsotypicSplit isotypic_quotient(const CommutingPair& pair, const MarkedRep& pi1) {
    const CoeffField& K = pair.field;
    if (intertwiners(pi1, pi1).size() != 1) throw Error(ErrorCode::not_irreducible, "pi1 is not absolutely irreducible");
    MarkedRep v = pair.h1_rep();
    IsotypicSplit s;
    auto homs = intertwiners(pi1, v);
    s.component = homs.empty() ? Mat(K, pair.dim, 0) : column_space(hcat(K, pair.dim, homs));
    s.component_dim = s.component.cols();
    s.kernel = common_kernel(K, pair.dim, intertwiners(v, pi1));
    s.kernel_dim = s.kernel.cols();
    s.complementary = s.component_dim + s.kernel_dim == pair.dim &&
                      col_rank(hcat(K, pair.dim, {s.component, s.kernel})) == pair.dim;
    std::vector<Mat> all = pair.h1;
    all.insert(all.end(), pair.h2.begin(), pair.h2.end());
    s.stable = stable_under(s.component, all) && stable_under(s.kernel, all);
    return s;
}

ThetaLift theta_lift(const CommutingPair& pair, const MarkedRep& pi1) {
    const CoeffField& K = pair.field;
    ThetaLift t;
    t.pi1 = pi1;
    t.split = isotypic_quotient(pair, pi1);
    t.d1_dim = 1;
    t.hom_basis = intertwiners(pi1, pair.h1_rep());
    t.theta = postcomposition_rep(pair, t.hom_basis);
    const std::size_t k = t.hom_basis.size(), dp = pi1.dim;

    // Phi: Theta (x) pi1 -> V, column i*dp + j is T_i e_j
    Mat phi(K, pair.dim, k * dp);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < dp; ++j)
            for (std::size_t r = 0; r < pair.dim; ++r) phi(r, i * dp + j) = t.hom_basis[i](r, j);
    bool ok = col_rank(phi) == k * dp && k * dp == t.split.component_dim;
    if (ok && k > 0) {
        ok = col_rank(hcat(K, pair.dim, {phi, t.split.component})) == k * dp;
        for (std::size_t g = 0; g < pair.h1.size() && ok; ++g) {
            Mat side(K, k * dp, k * dp);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t a = 0; a < dp; ++a)
                    for (std::size_t b = 0; b < dp; ++b) side(i * dp + a, i * dp + b) = pi1.images[g](a, b);
            ok = phi * side == pair.h1[g] * phi;
        }
        for (std::size_t g = 0; g < pair.h2.size() && ok; ++g) {
            Mat side(K, k * dp, k * dp);
            const Mat& th = t.theta.images[g];
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t i2 = 0; i2 < k; ++i2)
                    for (std::size_t a = 0; a < dp; ++a) side(i * dp + a, i2 * dp + a) = th(i, i2);
            ok = phi * side == pair.h2[g] * phi;
        }
    }
    t.factorization_ok = ok;
    t.irreducible = k == 0 || intertwiners(t.theta, t.theta).size() == 1;
    return t;
}

ThetaSuite theta_suite(const CommutingPair& pair, const std::vector<MarkedRep>& irreps) {
    ThetaSuite s;
    s.transcript = check_commuting(pair);
    for (const auto& pi : irreps) s.lifts.push_back(theta_lift(pair, pi));
    s.irr = true;
    for (std::size_t i = 0; i < s.lifts.size(); ++i) {
        const auto& l = s.lifts[i];
        const std::string tag = "pi1[" + std::to_string(i) + "]";
        s.transcript.add(tag + ": V = V^{pi1} + V[pi1], both H1 x H2 stable", l.split.complementary && l.split.stable);
        s.transcript.add(tag + ": V_{pi1} = Theta (x) pi1", l.factorization_ok);
        s.irr = s.irr && l.irreducible;
    }
    s.transcript.add("(Irr) every lift is 0 or irreducible", s.irr);
    s.uni = true;
    for (std::size_t i = 0; i < s.lifts.size(); ++i)
        for (std::size_t j = i + 1; j < s.lifts.size(); ++j) {
            const auto& a = s.lifts[i].theta;
            const auto& b = s.lifts[j].theta;
            if (a.dim == 0 || b.dim == 0) continue;
            if (reps_isomorphic(a, b)) s.uni = false;
        }
    s.transcript.add("(Uni) distinct pi1 have non-isomorphic nonzero lifts", s.uni);

    // joint projection onto the sum of the V_{pi1}: components independent, kernel = common kernel
    const CoeffField& K = pair.field;
    std::vector<Mat> comps, maps;
    std::size_t total = 0;
    MarkedRep v = pair.h1_rep();
    for (const auto& l : s.lifts) {
        comps.push_back(l.split.component);
        total += l.split.component_dim;
        for (auto& f : intertwiners(v, l.pi1)) maps.push_back(std::move(f));
    }
    const std::size_t rk = col_rank(hcat(K, pair.dim, comps));
    const std::size_t ker = common_kernel(K, pair.dim, maps).cols();
    s.joint_projection = rk == total && ker + total == pair.dim;
    s.transcript.add("joint projection surjective with kernel the common V[pi1]", s.joint_projection);
    return s;
}

CheckList theta_galois_equivariance(const SymplecticSpace& sp, const AdditiveCharacter& psi, long sigma) {
    CheckList out;
    WeilModel w(sp, psi);
    WeilModel ws(sp, char_galois(sigma, psi));
    CommutingPair a = center_pair(w), b = center_pair(ws);
    auto chars = sign_characters(a);
    const char* names[] = {"trivial", "sign"};
    for (std::size_t i = 0; i < chars.size(); ++i) {
        MarkedRep lhs = theta_lift(a, chars[i]).theta.galois_conjugate(sigma);
        MarkedRep rhs = theta_lift(b, chars[i].galois_conjugate(sigma)).theta;
        out.add(std::string("sigma_") + std::to_string(sigma) + " Theta(" + names[i] + ") equivariant",
                reps_isomorphic(lhs, rhs));
    }
    return out;
}

ScalarExtensionReport theta_scalar_extension_check(const CommutingPair& pair, const SubfieldTag& R,
                                                   const std::vector<CycloNum>& chi_values) {
    const CoeffField& K = pair.field;
    ScalarExtensionReport rep;
    rep.R = R;
    rep.transcript = check_commuting(pair);
    bool abelian = true, rational = true;
    for (const auto& x : pair.h1)
        for (const auto& y : pair.h1) abelian = abelian && x * y == y * x;
    for (const auto* list : {&pair.h1, &pair.h2})
        for (const auto& g : *list) rational = rational && g.entries_in(R);
    rep.transcript.add("H1 abelian", abelian);
    rep.transcript.add("pair defined over R", rational);

    // chi factors through H1: the closure of (h, chi(h)) has the size of the closure of h
    MarkedRep chi = character_rep(pair, chi_values);
    {
        std::vector<Mat> joint;
        for (std::size_t g = 0; g < pair.h1.size(); ++g) {
            Mat m(K, pair.dim + 1, pair.dim + 1);
            for (std::size_t i = 0; i < pair.dim; ++i)
                for (std::size_t j = 0; j < pair.dim; ++j) m(i, j) = pair.h1[g](i, j);
            m(pair.dim, pair.dim) = chi_values[g];
            joint.push_back(std::move(m));
        }
        rep.transcript.add("chi is a character of H1", matrix_group_closure(joint, 100000).size() ==
                                                           matrix_group_closure(pair.h1, 100000).size());
    }

    rep.E1 = subfield_of_values(K, chi_values).join(R);
    chi.defined_over = rep.E1;
    MarkedRep pi1 = restrict_scalars(chi, R);
    rep.pi1_dim = pi1.dim;

    // V_{pi1} over R, computed from R-rational pi1
    MarkedRep v = pair.h1_rep();
    auto homs = intertwiners(pi1, v);
    Mat comp = homs.empty() ? Mat(K, pair.dim, 0) : column_space(hcat(K, pair.dim, homs));
    rep.isotypic_dim = comp.cols();
    rep.theta_dim = homs.size();

    // E1 acting on pi1 by multiplication with a primitive element theta
    RelativeBasis rb(rep.E1, R);
    const CycloNum theta = rb.size() > 1 ? rb.basis()[1] : K.one();
    Mat mult(K, pi1.dim, pi1.dim);
    for (std::size_t j = 0; j < pi1.dim; ++j) {
        auto c = rb.coords(theta * rb.basis()[j]);
        for (std::size_t l = 0; l < pi1.dim; ++l) mult(l, j) = c[l];
    }
    // the same action on Hom_{H1}(pi1, V) by precomposition
    Mat act(K, homs.size(), homs.size());
    for (std::size_t i = 0; i < homs.size(); ++i) {
        Vec c = coordinates(homs, homs[i] * mult);
        for (std::size_t j = 0; j < homs.size(); ++j) act(j, i) = c[j];
    }
    MarkedRep theta_pi = postcomposition_rep(pair, homs);

    std::vector<Mat> blocks;
    std::size_t block_total = 0, theta_total = 0;
    bool all_theta = true;
    for (long w : coset_reps(rep.E1, R)) {
        ScalarExtensionBlock b;
        b.w = w;
        std::vector<CycloNum> wv;
        for (const auto& x : chi_values) wv.push_back(apply_aut(w, x));
        IsotypicSplit sw = isotypic_quotient(pair, character_rep(pair, wv));
        b.isotypic_dim = sw.component_dim;
        blocks.push_back(sw.component);
        block_total += sw.component_dim;
        ThetaLift tw = theta_lift(pair, character_rep(pair, wv));
        b.theta_dim = tw.theta.dim;
        theta_total += b.theta_dim;
        // eigenblock of theta acting through w(theta)
        Mat shifted = act - Mat::scalar(apply_aut(w, theta), homs.size());
        auto ev = homs.empty() ? std::vector<Vec>{} : nullspace(shifted);
        if (ev.size() != b.theta_dim) b.theta_match = false;
        else if (ev.empty()) b.theta_match = true;
        else b.theta_match = reps_isomorphic(restrict_to_subspace(theta_pi, Mat::from_columns(K, ev)), tw.theta);
        all_theta = all_theta && b.theta_match;
        rep.blocks.push_back(b);
    }
    const std::size_t span = col_rank(hcat(K, pair.dim, blocks));
    rep.transcript.add("V_{pi1} (x) K is the direct sum of the V_{w chi}",
                       span == block_total && block_total == rep.isotypic_dim &&
                           col_rank(hcat(K, pair.dim, {comp, hcat(K, pair.dim, blocks)})) == rep.isotypic_dim);
    rep.transcript.add("Theta(pi1) (x)_{E1,w} K matches Theta(w chi) for every w", all_theta && theta_total == rep.theta_dim);
    rep.transcript.add("number of blocks is [E1:R]", rep.blocks.size() == rep.pi1_dim);
    return rep;
}

} // namespace weil
