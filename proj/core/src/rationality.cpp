#include "weil/rationality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include "weil/local_symbols.hpp"

namespace weil {

std::vector<Mat> matrix_group_closure(const std::vector<Mat>& gens, std::size_t bound) {
    if (gens.empty()) throw Error(ErrorCode::config_invalid, "no generators");
    std::vector<Mat> elems{Mat::identity(gens[0].field(), gens[0].rows())};
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
    seen[elems[0].hash()].push_back(0);
    auto insert = [&](Mat x) {
        auto& bucket = seen[x.hash()];
        for (std::size_t i : bucket)
            if (elems[i] == x) return;
        if (elems.size() >= bound) throw Error(ErrorCode::too_large, "matrix group exceeds the enumeration bound");
        bucket.push_back(elems.size());
        elems.push_back(std::move(x));
    };
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) insert(elems[i] * g);
    return elems;
}

TraceProfile trace_profile(const MarkedRep& rep, bool exhaustive, std::size_t samples, std::uint64_t seed,
                           std::size_t bound) {
    TraceProfile prof;
    prof.exhaustive = exhaustive;
    if (exhaustive) {
        auto all = matrix_group_closure(rep.images, bound);
        prof.elements = all.size();
        for (const auto& g : all) prof.traces.push_back(g.trace());
        return prof;
    }
    std::mt19937_64 rng(seed);
    prof.traces.push_back(rep.field.from_int(static_cast<long>(rep.dim)));
    for (const auto& g : rep.images) prof.traces.push_back(g.trace());
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t len = 1 + rng() % 24;
        Mat x = rep.images[rng() % rep.images.size()];
        for (std::size_t i = 1; i < len; ++i) x = x * rep.images[rng() % rep.images.size()];
        prof.traces.push_back(x.trace());
    }
    prof.elements = prof.traces.size();
    return prof;
}

std::vector<Mat> intertwiners(const MarkedRep& a, const MarkedRep& b) {
    if (a.field != b.field) throw Error(ErrorCode::field_mismatch, "intertwiners across fields");
    if (a.images.size() != b.images.size()) throw Error(ErrorCode::config_invalid, "generator lists differ");
    const CoeffField& f = a.field;
    const std::size_t da = a.dim, db = b.dim;
    LinearSystem sys(f, da * db);
    // T is db x da, variable (r, c) -> r * da + c
    for (std::size_t g = 0; g < a.images.size(); ++g) {
        const Mat& A = a.images[g];
        const Mat& B = b.images[g];
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < da; ++c) {
                std::map<std::size_t, CycloNum> row;
                for (std::size_t k = 0; k < da; ++k)
                    if (!A(k, c).is_zero()) row.emplace(r * da + k, A(k, c));
                for (std::size_t k = 0; k < db; ++k)
                    if (!B(r, k).is_zero()) {
                        auto it = row.find(k * da + c);
                        if (it == row.end()) row.emplace(k * da + c, -B(r, k));
                        else it->second -= B(r, k);
                    }
                SparseRow sr;
                for (auto& [j, v] : row)
                    if (!v.is_zero()) sr.emplace_back(j, v);
                if (!sr.empty()) sys.add_row(sr);
            }
        if (sys.full_rank()) return {};
    }
    std::vector<Mat> out;
    for (const auto& v : sys.nullspace()) {
        Mat t(f, db, da);
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < da; ++c) t(r, c) = v[r * da + c];
        out.push_back(std::move(t));
    }
    return out;
}

std::optional<Mat> iso_test(const MarkedRep& a, const MarkedRep& b) {
    if (a.dim != b.dim) return std::nullopt;
    auto basis = intertwiners(a, b);
    if (basis.empty()) return std::nullopt;
    for (const auto& t : basis)
        if (rank(t) == a.dim) return t;
    // deterministic combinations sum_j c_j T_j
    for (long s = 1; s <= 24; ++s) {
        Mat t(a.field, a.dim, a.dim);
        long c = 1;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            c = (c * (s + 1) + static_cast<long>(j)) % 9973 + 1;
            t = t + basis[j].scaled(a.field.from_int(c));
        }
        if (rank(t) == a.dim) return t;
    }
    return std::nullopt;
}

SubfieldTag rationality_field(const MarkedRep& rep) {
    std::vector<long> stab;
    for (long u : rep.field.galois_group())
        if (iso_test(rep.galois_conjugate(u), rep)) stab.push_back(u);
    return SubfieldTag(rep.field, stab);
}

CharacterField character_field(const MarkedRep& rep, std::size_t bound, std::uint64_t seed) {
    CharacterField out;
    if (rep.field.kind() == FieldKind::modular) {
        out.tag = rationality_field(rep);
        out.method = "iso";
        return out;
    }
    try {
        auto prof = trace_profile(rep, true, 0, seed, bound);
        out.tag = subfield_of_values(rep.field, prof.traces);
        out.method = "exhaustive-traces";
        out.elements = prof.elements;
        return out;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::too_large) throw;
    }
    auto prof = trace_profile(rep, false, 400, seed, bound);
    SubfieldTag cand = subfield_of_values(rep.field, prof.traces);
    std::vector<long> stab;
    for (long u : cand.stabilizer())
        if (u == rep.field.reduce_exponent(1) || iso_test(rep.galois_conjugate(u), rep)) stab.push_back(u);
    out.tag = SubfieldTag(rep.field, stab);
    out.method = "sampled-traces+iso";
    out.elements = prof.elements;
    return out;
}

MarkedRep restrict_scalars(const MarkedRep& rep, const SubfieldTag& R) {
    if (R.field() != rep.field) throw Error(ErrorCode::field_mismatch, "subfield of another field");
    RelativeBasis rb(rep.defined_over, R);
    const std::size_t k = static_cast<std::size_t>(rb.size());
    const std::size_t d = rep.dim;
    MarkedRep out;
    out.field = rep.field;
    out.defined_over = R;
    out.dim = d * k;
    out.generators = rep.generators;
    out.label = RepLabel::derived;
    for (const auto& g : rep.images) {
        Mat h(rep.field, d * k, d * k);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t i = 0; i < d; ++i) {
                if (g(r, i).is_zero()) continue;
                for (std::size_t j = 0; j < k; ++j) {
                    auto c = rb.coords(g(r, i) * rb.basis()[j]);
                    for (std::size_t l = 0; l < k; ++l) h(r * k + l, i * k + j) = c[l];
                }
            }
        out.images.push_back(std::move(h));
    }
    return out;
}

SemilinearMap semilinear_product(const SemilinearMap& x, const SemilinearMap& y) {
    SemilinearMap out;
    for (const auto& [s, a] : x.parts)
        for (const auto& [t, b] : y.parts) {
            const CoeffField& f = a.field();
            long st = f.reduce_exponent(s * t);
            Mat p = a * b.apply_aut(s);
            auto it = out.parts.find(st);
            if (it == out.parts.end()) out.parts.emplace(st, std::move(p));
            else it->second = it->second + p;
        }
    for (auto it = out.parts.begin(); it != out.parts.end();) {
        if (it->second.is_zero()) it = out.parts.erase(it);
        else ++it;
    }
    return out;
}

namespace {

// Positions at which a reduced echelon basis has a 1 in exactly one member.
std::vector<std::size_t> free_positions(const std::vector<Mat>& basis) {
    std::vector<std::size_t> pos;
    if (basis.empty()) return pos;
    const std::size_t cells = basis[0].rows() * basis[0].cols();
    const std::size_t cols = basis[0].cols();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t e = 0; e < cells; ++e) {
            if (!basis[j](e / cols, e % cols).is_one()) continue;
            bool alone = true;
            for (std::size_t i = 0; i < basis.size() && alone; ++i)
                if (i != j && !basis[i](e / cols, e % cols).is_zero()) alone = false;
            if (alone) {
                pos.push_back(e);
                break;
            }
        }
        if (pos.size() != j + 1) throw Error(ErrorCode::rank_deficiency, "intertwiner basis is not reduced");
    }
    return pos;
}

struct HomSpace {
    long sigma;
    std::vector<Mat> basis;
    std::vector<std::size_t> free;
};

} // namespace

EndAlgebra endomorphism_algebra(const MarkedRep& rep, const SubfieldTag& R) {
    const CoeffField& K = rep.field;
    if (rep.defined_over != SubfieldTag::whole(K))
        throw Error(ErrorCode::bad_tower, "endomorphism algebra needs a representation over the whole coefficient field");
    if (R.field() != K) throw Error(ErrorCode::field_mismatch, "subfield of another field");
    EndAlgebra alg;
    alg.base = R;
    RelativeBasis rb(R);
    const std::size_t k = static_cast<std::size_t>(rb.size());
    std::vector<HomSpace> homs;
    for (long s : R.stabilizer()) {
        MarkedRep conj = rep.galois_conjugate(s);
        HomSpace h{s, intertwiners(conj, rep), {}};
        if (h.basis.empty()) continue;
        h.free = free_positions(h.basis);
        if (iso_test(conj, rep)) alg.inner.push_back(s);
        homs.push_back(std::move(h));
    }
    // R-basis b_l T_{s,j} s
    struct Index {
        std::size_t hom, j, l;
    };
    std::vector<Index> idx;
    for (std::size_t h = 0; h < homs.size(); ++h)
        for (std::size_t j = 0; j < homs[h].basis.size(); ++j)
            for (std::size_t l = 0; l < k; ++l) {
                idx.push_back({h, j, l});
                SemilinearMap e;
                e.parts.emplace(homs[h].sigma, homs[h].basis[j].scaled(rb.basis()[l]));
                alg.basis.push_back(std::move(e));
            }
    alg.dim = alg.basis.size();
    const std::size_t cols = rep.dim;
    auto coords = [&](const SemilinearMap& x) {
        std::vector<CycloNum> out(alg.dim, K.zero());
        for (const auto& [s, part] : x.parts) {
            auto hit = std::find_if(homs.begin(), homs.end(), [&](const HomSpace& h) { return h.sigma == s; });
            if (hit == homs.end()) throw Error(ErrorCode::identity_failure, "product left the endomorphism algebra");
            Mat rebuilt(K, part.rows(), part.cols());
            std::size_t h = static_cast<std::size_t>(hit - homs.begin());
            for (std::size_t j = 0; j < hit->basis.size(); ++j) {
                CycloNum kappa = part(hit->free[j] / cols, hit->free[j] % cols);
                rebuilt = rebuilt + hit->basis[j].scaled(kappa);
                auto rc = rb.coords(kappa);
                for (std::size_t i = 0; i < idx.size(); ++i)
                    if (idx[i].hom == h && idx[i].j == j) out[i] = rc[idx[i].l];
            }
            if (rebuilt != part) throw Error(ErrorCode::identity_failure, "product left the endomorphism algebra");
        }
        return out;
    };
    alg.structure.assign(alg.dim, std::vector<std::vector<CycloNum>>(alg.dim));
    for (std::size_t i = 0; i < alg.dim; ++i)
        for (std::size_t j = 0; j < alg.dim; ++j)
            alg.structure[i][j] = coords(semilinear_product(alg.basis[i], alg.basis[j]));
    // center: sum_i x_i (c_ijk - c_jik) = 0
    LinearSystem sys(K, alg.dim);
    for (std::size_t j = 0; j < alg.dim; ++j)
        for (std::size_t kk = 0; kk < alg.dim; ++kk) {
            SparseRow row;
            for (std::size_t i = 0; i < alg.dim; ++i) {
                CycloNum v = alg.structure[i][j][kk] - alg.structure[j][i][kk];
                if (!v.is_zero()) row.emplace_back(i, v);
            }
            if (!row.empty()) sys.add_row(row);
        }
    alg.center = sys.nullspace();
    alg.center_dim = alg.center.size();
    alg.commutative = alg.center_dim == alg.dim;
    if (alg.center_dim && alg.dim % alg.center_dim == 0) {
        std::size_t q = alg.dim / alg.center_dim;
        std::size_t r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(q))));
        if (r * r == q) alg.m = r;
    }
    // certificate: a center made of scalar matrices is a subring of K, hence a field
    const long id = K.reduce_exponent(1);
    bool scalars = true;
    for (const auto& z : alg.center) {
        std::map<long, Mat> acc;
        for (std::size_t i = 0; i < alg.dim; ++i) {
            if (z[i].is_zero()) continue;
            for (const auto& [s, part] : alg.basis[i].parts) {
                Mat add = part.scaled(z[i]);
                auto it = acc.find(s);
                if (it == acc.end()) acc.emplace(s, std::move(add));
                else it->second = it->second + add;
            }
        }
        for (auto it = acc.begin(); it != acc.end();) {
            if (it->second.is_zero()) it = acc.erase(it);
            else ++it;
        }
        if (acc.size() != 1 || acc.begin()->first != id) {
            scalars = false;
            continue;
        }
        const Mat& zm = acc.begin()->second;
        if (!zm.is_scalar()) {
            scalars = false;
            if (rank(zm) < zm.rows()) alg.center_is_field = false;
        }
    }
    if (scalars) alg.center_is_field = true;

    if (alg.center_is_field == false) {
        alg.is_division = false;
        alg.division_certificate = "zero divisor in the center";
    } else if (alg.center_is_field == true && alg.m == 1) {
        alg.is_division = true;
        alg.division_certificate = "commutative: the algebra is its center, a field";
    } else if (alg.center_is_field == true && K.kind() == FieldKind::modular) {
        alg.is_division = alg.m == 1;
        alg.division_certificate = "finite center: central division algebras over finite fields are commutative";
    } else if (alg.center_is_field == true && alg.m == 2 && alg.inner.size() == 2) {
        long tau = alg.inner[0] == id ? alg.inner[1] : alg.inner[0];
        Mat t = *iso_test(rep.galois_conjugate(tau), rep);
        for (std::size_t e = 0; e < t.rows() * t.cols(); ++e)
            if (!t(e / t.cols(), e % t.cols()).is_zero()) {
                t = t.scaled(t(e / t.cols(), e % t.cols()).inverse());
                break;
            }
        CycloNum c;
        if (!(t * t.apply_aut(tau)).is_scalar(&c))
            throw Error(ErrorCode::identity_failure, "square of the semilinear intertwiner is not scalar");
        const CycloNum zeta = K.zeta(1);
        CycloNum dd = (zeta - apply_aut(tau, zeta)) * (zeta - apply_aut(tau, zeta));
        const SubfieldTag E(K, alg.inner);
        if (tau == K.reduce_exponent(-1) && c.is_rational() && sgn(c.rational_part()) < 0) {
            alg.is_division = true;
            alg.division_certificate = "(T tau)^2 = " + c.str() +
                                       " < 0 is not a norm from the CM field to its totally real subfield";
        } else if (E == SubfieldTag::prime(K) && c.is_rational() && dd.is_rational()) {
            auto ram = quaternion_ramification(dd.rational_part(), c.rational_part());
            alg.is_division = !ram.empty();
            std::string places;
            for (const auto& pl : ram) places += (places.empty() ? "" : ",") + pl.str();
            alg.division_certificate = "quaternion algebra (" + dd.str() + ", " + c.str() + ") ramified at {" + places + "}";
        } else {
            alg.division_certificate = "undetermined: (T tau)^2 = " + c.str();
        }
    } else {
        alg.division_certificate = "undetermined";
    }
    return alg;
}

namespace {

std::vector<std::size_t> pivot_columns(Mat w) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < w.cols() && row < w.rows(); ++c) {
        std::size_t p = row;
        while (p < w.rows() && w(p, c).is_zero()) ++p;
        if (p == w.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(p, j), w(row, j));
        CycloNum inv = w(row, c).inverse();
        for (std::size_t j = c; j < w.cols(); ++j) w(row, j) *= inv;
        for (std::size_t r = row + 1; r < w.rows(); ++r) {
            if (w(r, c).is_zero()) continue;
            CycloNum s = w(r, c);
            for (std::size_t j = c; j < w.cols(); ++j)
                if (!w(row, j).is_zero()) w(r, j) -= s * w(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

} // namespace

Mat column_space(const Mat& a) {
    std::vector<Vec> cols;
    for (std::size_t c : pivot_columns(a)) cols.push_back(a.column(c));
    if (cols.empty()) return Mat(a.field(), a.rows(), 0);
    return Mat::from_columns(a.field(), cols);
}

MarkedRep restrict_to_subspace(const MarkedRep& rep, const Mat& B) {
    const std::size_t r = B.cols();
    // rows of B forming an invertible r x r block
    std::vector<std::size_t> prow = pivot_columns(B.transpose());
    if (prow.size() != r) throw Error(ErrorCode::rank_deficiency, "subspace basis is not independent");
    Mat bp(rep.field, r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) bp(i, j) = B(prow[i], j);
    Mat bpi = bp.inverse();
    MarkedRep out;
    out.field = rep.field;
    out.defined_over = rep.defined_over;
    out.dim = r;
    out.generators = rep.generators;
    out.label = RepLabel::derived;
    for (const auto& g : rep.images) {
        Mat gb = g * B;
        Mat sel(rep.field, r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sel(i, j) = gb(prow[i], j);
        Mat h = bpi * sel;
        if (B * h != gb) throw Error(ErrorCode::identity_failure, "subspace is not invariant");
        out.images.push_back(std::move(h));
    }
    return out;
}

OrbitDecomposition orbit_decomposition(const MarkedRep& rep, const SubfieldTag& R) {
    EndAlgebra alg = endomorphism_algebra(rep, R);
    if (alg.center_is_field != true || alg.is_division == false)
        throw Error(ErrorCode::not_irreducible, "representation is not irreducible over the base field");
    const CoeffField& K = rep.field;
    OrbitDecomposition out;
    out.m = alg.m;
    out.n = alg.center_dim;
    MarkedRep vr = restrict_scalars(rep, R);
    RelativeBasis rb(SubfieldTag::whole(K), R);
    const std::size_t k = static_cast<std::size_t>(rb.size());
    const std::size_t D = vr.dim;
    Mat mz(K, D, D);
    for (std::size_t j = 0; j < k; ++j) {
        auto c = rb.coords(K.zeta(1) * rb.basis()[j]);
        for (std::size_t i = 0; i < rep.dim; ++i)
            for (std::size_t l = 0; l < k; ++l) mz(i * k + l, i * k + j) = c[l];
    }
    const auto& gal = R.stabilizer();
    std::vector<MarkedRep> conjugates;
    for (long u : gal) conjugates.push_back(rep.galois_conjugate(u));
    std::map<std::vector<long>, std::size_t> class_of;
    std::map<std::size_t, std::size_t> class_size;
    bool matched = true;
    for (long s : gal) {
        Mat p = Mat::identity(K, D);
        CycloNum ev = K.zeta(s);
        for (long t : gal) {
            if (t == s) continue;
            CycloNum et = K.zeta(t);
            p = p * (mz - Mat::scalar(et, D)).scaled((ev - et).inverse());
        }
        Mat b = column_space(p);
        OrbitBlock blk;
        blk.sigma = s;
        blk.dim = b.cols();
        if (blk.dim == 0) {
            matched = false;
            out.blocks.push_back(blk);
            continue;
        }
        MarkedRep sub = restrict_to_subspace(vr, b);
        bool found = false;
        for (std::size_t i = 0; i < gal.size(); ++i)
            if (iso_test(sub, conjugates[i])) {
                blk.conjugate = gal[i];
                found = true;
                break;
            }
        if (!found) {
            matched = false;
            out.blocks.push_back(blk);
            continue;
        }
        std::vector<long> coset;
        for (long h : alg.inner) coset.push_back(K.reduce_exponent(blk.conjugate * h));
        std::sort(coset.begin(), coset.end());
        auto it = class_of.find(coset);
        if (it == class_of.end()) it = class_of.emplace(coset, class_of.size()).first;
        blk.iso_class = it->second;
        ++class_size[blk.iso_class];
        out.blocks.push_back(blk);
    }
    if (class_of.size() != out.n) matched = false;
    for (const auto& [c, sz] : class_size)
        if (sz != out.m) matched = false;
    for (const auto& b : out.blocks)
        if (b.dim != rep.dim) matched = false;
    out.blocks_match = matched;
    return out;
}

} // namespace weil
