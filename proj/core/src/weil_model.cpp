#include "weil/weil_model.hpp"

#include <algorithm>

namespace weil {

AdditiveCharacter::AdditiveCharacter(const FqField& field, const CoeffField& coeffs, Fq twist)
    : F(&field), K(coeffs), c(twist) {
    if (twist == 0) throw Error(ErrorCode::zero_input, "trivial additive character");
    if (coeffs.n() % field.p() != 0)
        throw Error(ErrorCode::field_mismatch, "coefficient field lacks p-th roots of unity");
}

long AdditiveCharacter::exponent(Fq x) const {
    long n = K.n(), p = F->p();
    return (n / p) * F->trace(F->mul(c, x)) % n;
}

CycloNum AdditiveCharacter::operator()(Fq x) const { return K.zeta(exponent(x)); }

AdditiveCharacter char_twist(const AdditiveCharacter& psi, Fq gamma) {
    if (gamma == 0) throw Error(ErrorCode::zero_input, "zero twist");
    return AdditiveCharacter(*psi.F, psi.K, psi.F->mul(psi.c, gamma));
}

AdditiveCharacter char_galois(long u, const AdditiveCharacter& psi) {
    if (!psi.K.has_automorphism(u)) throw Error(ErrorCode::field_mismatch, "not an automorphism");
    Fq g = psi.F->from_int(u % psi.F->p());
    return AdditiveCharacter(*psi.F, psi.K, psi.F->mul(psi.c, g));
}

CoeffField default_coeff_field(long p, long ell) {
    return ell == 0 ? CoeffField::rational(p) : CoeffField::modular(p, ell);
}

const char* label_name(RepLabel l) {
    switch (l) {
    case RepLabel::heisenberg: return "heisenberg";
    case RepLabel::weil: return "weil";
    case RepLabel::weil_even: return "weil-even";
    case RepLabel::weil_odd: return "weil-odd";
    case RepLabel::derived: return "derived";
    }
    return "derived";
}

const char* part_name(Part p) {
    switch (p) {
    case Part::full: return "full";
    case Part::even: return "even";
    case Part::odd: return "odd";
    }
    return "full";
}

MarkedRep MarkedRep::galois_conjugate(long u) const {
    MarkedRep r = *this;
    for (auto& m : r.images) m = m.apply_aut(u);
    return r;
}

bool MarkedRep::images_invertible() const {
    for (const auto& m : images)
        if (rank(m) != dim) return false;
    return true;
}

// ---------------------------------------------------------------------------

WeilModel::WeilModel(const SymplecticSpace& space, const AdditiveCharacter& psi) : space_(space), psi_(psi) {
    const FqField& F = *space.F;
    const long q = F.q();
    std::size_t total = 1;
    for (int i = 0; i < space.m; ++i) total *= static_cast<std::size_t>(q);
    points_.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<Fq> y(space.m);
        std::size_t t = idx;
        for (int i = space.m - 1; i >= 0; --i) {
            y[i] = static_cast<Fq>(t % q);
            t /= q;
        }
        points_.push_back(y);
    }
    neg_index_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::vector<Fq> ny;
        for (Fq v : points_[i]) ny.push_back(F.neg(v));
        neg_index_[i] = point_index(ny);
    }
    even_reps_.push_back(0);
    for (std::size_t i = 1; i < total; ++i)
        if (i < neg_index_[i]) {
            even_reps_.push_back(i);
            odd_reps_.push_back(i);
        }
}

std::size_t WeilModel::point_index(const std::vector<Fq>& y) const {
    std::size_t idx = 0;
    const long q = space_.F->q();
    for (Fq v : y) idx = idx * static_cast<std::size_t>(q) + v;
    return idx;
}

Mat WeilModel::heisenberg(const HeisElem& h) const {
    const FqField& F = *space_.F;
    const int m = space_.m;
    const std::size_t d = dim();
    Mat out(field(), d, d);
    // <y, x> = -sum x_i y_i for x in X, y in Y
    Fq yx = 0;
    for (int i = 0; i < m; ++i) yx = F.sub(yx, F.mul(h.w[i], h.w[m + i]));
    Fq base = F.add(h.t, F.mul(F.half(), yx));
    for (std::size_t r = 0; r < d; ++r) {
        const auto& yp = points_[r];
        Fq ypx = 0;
        std::vector<Fq> target(m);
        for (int i = 0; i < m; ++i) {
            ypx = F.sub(ypx, F.mul(h.w[i], yp[i]));
            target[i] = F.add(yp[i], h.w[m + i]);
        }
        out(r, point_index(target)) = psi_(F.add(base, ypx));
    }
    return out;
}

MarkedRep WeilModel::heisenberg_rep() const {
    MarkedRep r;
    r.field = field();
    r.defined_over = SubfieldTag::whole(field());
    r.dim = dim();
    r.label = RepLabel::heisenberg;
    for (const auto& h : heis_generators(space_)) {
        r.generators.push_back("H" + h.str(*space_.F));
        r.images.push_back(heisenberg(h));
    }
    return r;
}

CycloNum WeilModel::weil_sum(Fq s) const {
    const FqField& F = *space_.F;
    Fq coef = F.mul(s, F.neg(F.half()));
    CycloNum sum = field().zero();
    for (const auto& x : points_) {
        Fq qx = 0;
        for (Fq v : x) qx = F.add(qx, F.mul(v, v));
        sum += psi_(F.mul(coef, qx));
    }
    return sum;
}

const Mat& WeilModel::token_image(const SpToken& t) const {
    const std::string key = t.str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const FqField& F = *space_.F;
    const int m = space_.m;
    const std::size_t d = dim();
    Mat out(field(), d, d);
    switch (t.kind) {
    case SpToken::Kind::M: {
        CycloNum sign = field().from_int(F.legendre(t.a.det()));
        FqMat at = t.a.transpose();
        for (std::size_t r = 0; r < d; ++r) out(r, point_index(at * points_[r])) = sign;
        break;
    }
    case SpToken::Kind::N: {
        for (std::size_t r = 0; r < d; ++r) {
            const auto& y = points_[r];
            std::vector<Fq> by = t.a * y;
            Fq v = 0;
            for (int i = 0; i < m; ++i) v = F.add(v, F.mul(y[i], by[i]));
            out(r, r) = psi_(F.mul(F.half(), v));
        }
        break;
    }
    case SpToken::Kind::W0: {
        CycloNum ginv = weil_sum(1).inverse();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                Fq v = 0;
                for (int i = 0; i < m; ++i) v = F.sub(v, F.mul(points_[r][i], points_[c][i]));
                out(r, c) = psi_(v) * ginv;
            }
        break;
    }
    }
    return cache_.emplace(key, std::move(out)).first->second;
}

Mat WeilModel::word_image(const GeneratorWord& w) const {
    if (w.empty()) return Mat::identity(field(), dim());
    Mat r = token_image(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) r = r * token_image(w[i]);
    return r;
}

Mat WeilModel::omega(const FqMat& g) const { return word_image(sp_factor(space_, g)); }

Mat WeilModel::w_formula(const FqMat& c) const {
    const FqField& F = *space_.F;
    const int m = space_.m;
    const std::size_t d = dim();
    // Q_w(x) = 1/2 <cx, x> = -1/2 x^T c x
    CycloNum s = field().zero();
    for (const auto& x : points_) {
        std::vector<Fq> cx = c * x;
        Fq v = 0;
        for (int i = 0; i < m; ++i) v = F.add(v, F.mul(x[i], cx[i]));
        s += psi_(F.mul(F.neg(F.half()), v));
    }
    CycloNum sinv = s.inverse();
    FqMat ct = c.transpose();
    Mat out(field(), d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t xi = 0; xi < d; ++xi) {
            const auto& x = points_[xi];
            Fq v = 0;
            for (int i = 0; i < m; ++i) v = F.sub(v, F.mul(x[i], points_[r][i]));
            std::size_t col = point_index(ct * x);
            out(r, col) += psi_(v) * sinv;
        }
    return out;
}

std::size_t WeilModel::part_dim(Part part) const {
    switch (part) {
    case Part::full: return dim();
    case Part::even: return even_reps_.size();
    case Part::odd: return odd_reps_.size();
    }
    return dim();
}

Mat WeilModel::part_basis(Part part) const {
    const std::size_t d = dim();
    if (part == Part::full) return Mat::identity(field(), d);
    const auto& reps = part == Part::even ? even_reps_ : odd_reps_;
    Mat b(field(), d, reps.size());
    for (std::size_t j = 0; j < reps.size(); ++j) {
        std::size_t r = reps[j];
        b(r, j) = field().one();
        if (neg_index_[r] != r) b(neg_index_[r], j) = part == Part::even ? field().one() : field().from_int(-1);
    }
    return b;
}

Mat WeilModel::restrict_to(const Mat& a, Part part) const {
    if (part == Part::full) return a;
    const auto& reps = part == Part::even ? even_reps_ : odd_reps_;
    const std::size_t k = reps.size();
    Mat out(field(), k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t r = reps[j], nr = neg_index_[r];
            CycloNum v = a(reps[i], r);
            if (nr != r) {
                if (part == Part::even) v += a(reps[i], nr);
                else v -= a(reps[i], nr);
            }
            out(i, j) = v;
        }
    return out;
}

Mat WeilModel::parity() const {
    const std::size_t d = dim();
    Mat p(field(), d, d);
    for (std::size_t i = 0; i < d; ++i) p(i, neg_index_[i]) = field().one();
    return p;
}

MarkedRep WeilModel::rep(Part part) const {
    MarkedRep r;
    r.field = field();
    r.defined_over = SubfieldTag::whole(field());
    r.dim = part_dim(part);
    r.label = part == Part::full ? RepLabel::weil : (part == Part::even ? RepLabel::weil_even : RepLabel::weil_odd);
    for (const auto& t : sp_generators(space_)) {
        r.generators.push_back(t.str());
        r.images.push_back(restrict_to(token_image(t), part));
    }
    return r;
}

CycloNum WeilModel::cocycle(const FqMat& g, const FqMat& h) const {
    Mat x = omega(g) * omega(h);
    Mat y = omega(g * h);
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (y(i, j).is_zero()) continue;
            CycloNum lam = x(i, j) / y(i, j);
            if (x != y.scaled(lam)) throw Error(ErrorCode::cocycle_violation, "omega(g)omega(h) is not a multiple of omega(gh)");
            return lam;
        }
    throw Error(ErrorCode::cocycle_violation, "zero operator");
}

// ---------------------------------------------------------------------------

bool CheckList::all_passed() const {
    for (const auto& [n, ok] : items)
        if (!ok) return false;
    return true;
}

FqMat random_sp_element(const SymplecticSpace& s, std::mt19937_64& rng, int length) {
    auto gens = sp_generators(s);
    FqMat g = FqMat::identity(*s.F, 2 * s.m);
    for (int i = 0; i < length; ++i) g = g * token_matrix(s, gens[rng() % gens.size()]);
    return g;
}

CheckList weil_twist_check(const SymplecticSpace& space, const AdditiveCharacter& psi, Fq gamma) {
    const FqField& F = *space.F;
    if (gamma == 0) throw Error(ErrorCode::zero_input, "zero twist");
    CheckList out;
    WeilModel w(space, psi);
    WeilModel wg(space, char_twist(psi, gamma));
    const std::string gs = F.str(gamma);
    bool m_ok = true, n_ok = true;
    for (const auto& t : sp_generators(space)) {
        if (t.kind == SpToken::Kind::M) m_ok = m_ok && wg.token_image(t) == w.token_image(t);
        if (t.kind == SpToken::Kind::N) {
            SpToken tg{SpToken::Kind::N, t.a.scaled(gamma)};
            n_ok = n_ok && wg.token_image(t) == w.token_image(tg);
        }
    }
    out.add("m(a): omega_{psi^" + gs + "}(m(a)) = omega_psi(m(a))", m_ok);
    out.add("n(b): omega_{psi^" + gs + "}(n(b)) = omega_psi(n(" + gs + " b))", n_ok);
    // w(c): the dilation enters as gamma^{-1} c
    FqMat cinv = FqMat::scalar(F, space.m, F.inv(gamma));
    Mat lhs = wg.token_image({SpToken::Kind::W0, FqMat()});
    Mat rhs = w.omega(sp_w(space, cinv));
    CycloNum measured = lhs(0, 0) / rhs(0, 0);
    bool w_ok = lhs == rhs.scaled(measured);
    CycloNum predicted = w.weil_sum(F.inv(gamma)) / w.weil_sum(gamma);
    out.add("w(c): omega_{psi^" + gs + "}(W0) = Omega * omega_psi(w(" + gs + "^-1))", w_ok);
    out.add("w(c): measured Omega equals Weil-sum ratio", w_ok && measured == predicted);
    out.add("w(c): kernel formula agrees with the factorised word", w.w_formula(cinv) == rhs);
    // conjugation by m_delta for delta = gamma, and for a square root of gamma
    auto conj_check = [&](Fq delta) {
        WeilModel wd(space, char_twist(psi, F.mul(delta, delta)));
        FqMat md = sp_m(space, FqMat::scalar(F, space.m, delta));
        Mat c = w.omega(md);
        Mat ci = c.inverse();
        bool ok = true;
        for (const auto& t : sp_generators(space)) ok = ok && wd.token_image(t) == c * w.token_image(t) * ci;
        return ok;
    };
    out.add("conjugation: omega_{psi^(" + gs + ")^2} = omega_psi^{m_" + gs + "}", conj_check(gamma));
    if (auto r = F.sqrt(gamma)) {
        out.add("conjugation: omega_{psi^" + gs + "} = omega_psi^{m_" + F.str(*r) + "}", conj_check(*r));
    }
    return out;
}

CheckList intertwining_check(const WeilModel& w) {
    CheckList out;
    const auto& s = w.space();
    auto hs = heis_generators(s);
    std::vector<Mat> rho;
    for (const auto& h : hs) rho.push_back(w.heisenberg(h));
    std::vector<std::pair<std::string, FqMat>> gs;
    for (const auto& t : sp_generators(s)) gs.emplace_back(t.str(), token_matrix(s, t));
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 4; ++i) gs.emplace_back("random word " + std::to_string(i), random_sp_element(s, rng));
    for (const auto& [name, g] : gs) {
        Mat om = w.omega(g);
        bool ok = true;
        for (std::size_t k = 0; k < hs.size(); ++k)
            ok = ok && om * rho[k] == w.heisenberg(sp_act(s, g, hs[k])) * om;
        out.add("intertwining " + name, ok);
    }
    return out;
}

CheckList semilinearity_check(const WeilModel& w, long u, std::uint64_t seed, int random_words) {
    CheckList out;
    const auto& s = w.space();
    WeilModel ws(s, char_galois(u, w.psi()));
    bool ok = true;
    for (const auto& t : sp_generators(s)) ok = ok && w.token_image(t).apply_aut(u) == ws.token_image(t);
    out.add("sigma_" + std::to_string(u) + " on generator images", ok);
    std::mt19937_64 rng(seed);
    bool ok2 = true;
    for (int i = 0; i < random_words; ++i) {
        FqMat g = random_sp_element(s, rng);
        ok2 = ok2 && w.omega(g).apply_aut(u) == ws.omega(g);
    }
    out.add("sigma_" + std::to_string(u) + " on random words", ok2);
    return out;
}

CocycleCert cocycle_certificate(const WeilModel& w, bool exhaustive, std::size_t samples, std::uint64_t seed,
                                std::uint64_t bound) {
    CocycleCert cert;
    cert.exhaustive = exhaustive;
    const CycloNum one = w.field().one(), mone = w.field().from_int(-1);
    auto tally = [&](const CycloNum& lam) {
        ++cert.pairs;
        if (lam == one) ++cert.plus;
        else if (lam == mone) ++cert.minus;
    };
    if (exhaustive) {
        auto all = sp_enumerate(w.space(), bound);
        std::vector<Mat> om;
        om.reserve(all.size());
        for (const auto& g : all) om.push_back(w.omega(g));
        std::map<std::vector<Fq>, std::size_t> index;
        for (std::size_t i = 0; i < all.size(); ++i) index[all[i].data()] = i;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j) {
                Mat x = om[i] * om[j];
                const Mat& y = om[index.at((all[i] * all[j]).data())];
                if (x == y) tally(one);
                else if (x == -y) tally(mone);
                else ++cert.pairs;
            }
        return cert;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        FqMat g = random_sp_element(w.space(), rng), h = random_sp_element(w.space(), rng);
        try {
            tally(w.cocycle(g, h));
        } catch (const Error&) {
            ++cert.pairs;
        }
    }
    return cert;
}

} // namespace weil
