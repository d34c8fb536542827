// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
// All comparisons are exact; the only numeric tolerances are wall-clock limits.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "weil/descent.hpp"
#include "weil/local_symbols.hpp"
#include "weil/rationality.hpp"
#include "weil/theta.hpp"

using namespace weil;

namespace {

constexpr double kCharFieldSeconds = 60.0;    // criterion 1, total
constexpr double kRealisationSeconds = 120.0; // criterion 2, each
constexpr long kNormHeight = 20;              // criterion 3 search height
constexpr int kProductFormulaPairs = 100;     // criterion 4
constexpr std::size_t kCocycleSamples = 200;  // criterion 6

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void need(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

WeilModel model(long p, int f, const CoeffField& K, int m = 1) {
    const FqField& F = FqField::get(p, f);
    return WeilModel(SymplecticSpace(F, m), AdditiveCharacter(F, K));
}

SubfieldTag values_field(const CoeffField& K, std::vector<CycloNum> v) { return subfield_of_values(K, v); }

// Norm as the product of the conjugates under the powers of g.
CycloNum norm_by_conjugates(const CycloNum& x, long g, int degree) {
    CycloNum r = x.field().one();
    long e = 1;
    for (int k = 0; k < degree; ++k) {
        r *= apply_aut(e, x);
        e = x.field().reduce_exponent(e * g);
    }
    return r;
}

std::string fmt(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

Outcome criterion1() {
    Outcome o;
    auto t0 = Clock::now();
    for (auto [p, f] : {std::pair{3L, 1}, std::pair{5L, 1}, std::pair{7L, 1}, std::pair{3L, 2}}) {
        CoeffField K = CoeffField::rational(p);
        // Q when f is even, Q(sqrt(p*)) when f is odd
        SubfieldTag expect = f % 2 == 0 ? SubfieldTag::prime(K) : values_field(K, {gauss_sum(K, p)});
        WeilModel w = model(p, f, K);
        for (Part part : {Part::even, Part::odd}) {
            CharacterField cf = character_field(w.rep(part));
            o.need(cf.tag == expect, "q=" + std::to_string(w.dim()) + " " + part_name(part));
        }
    }
    double t = seconds_since(t0);
    o.need(t < kCharFieldSeconds, "time limit");
    o.note("8 character fields in " + fmt(t));
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto timed = [&](const std::string& name, const std::function<void()>& fn) {
        auto t0 = Clock::now();
        fn();
        double t = seconds_since(t0);
        o.need(t < kRealisationSeconds, name + " time limit");
        o.note(name + " " + fmt(t));
    };
    timed("(a)", [&] {
        CoeffField K = CoeffField::rational(3);
        WeilModel w = model(3, 2, K);
        DescentResult r = fixed_points(descent_datum_even(w));
        o.need(r.transcript.all_passed(), "(a) transcript");
        o.need(r.target == SubfieldTag::prime(K) && r.model.dim == 5, "(a) 5x5 over Q");
        for (const auto& m : r.model.images) o.need(m.entries_in(SubfieldTag::prime(K)), "(a) rational entries");
        o.need(iso_test(r.model, w.rep(Part::even)).has_value(), "(a) round trip");
    });
    timed("(b)", [&] {
        CoeffField K = CoeffField::rational(7);
        WeilModel w = model(7, 1, K);
        DescentResult r = fixed_points(descent_datum_weil(w));
        o.need(r.transcript.all_passed(), "(b) transcript");
        o.need(r.target == values_field(K, {gauss_sum(K, 7)}), "(b) target Q(sqrt(-7))");
        o.need(iso_test(r.model, w.rep(Part::full)).has_value(), "(b) round trip");
    });
    auto odd = [&](const std::string& name, long p, const SubfieldTag& expect, bool needs_lambda) {
        SymplecticSpace s(FqField::get(p, 1), 1);
        OddRealisation r = realise_odd(s);
        o.need(r.result.transcript.all_passed(), name + " transcript");
        o.need(same_subfield(r.target, expect), name + " target");
        if (needs_lambda) {
            o.need(r.lambda.has_value(), name + " lambda found");
            if (r.lambda) {
                int deg = r.target.field().degree() / r.target.degree();
                o.need(norm_by_conjugates(*r.lambda, r.generator, deg) == r.target.field().from_int(-1),
                       name + " N(lambda) = -1");
            }
        }
        WeilModel w = model(p, 1, odd_ambient_field(p, 0));
        o.need(iso_test(r.result.model, w.rep(Part::odd)).has_value(), name + " round trip");
    };
    timed("(c)", [&] {
        CoeffField K = CoeffField::rational(20);
        CycloNum s5 = gauss_sum(K, 5);
        odd("(c)", 5, values_field(K, {s5, s5 * K.zeta(5)}), true);
    });
    timed("(d)", [&] {
        CoeffField K = CoeffField::rational(3);
        odd("(d)", 3, values_field(K, {gauss_sum(K, 3)}), false);
    });
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (auto [p, f] : {std::pair{5L, 1}, std::pair{3L, 2}, std::pair{13L, 1}}) {
        const std::string q = "q=" + std::to_string(FqField::get(p, f).q());
        ObstructionReport r = odd_obstruction_check(SymplecticSpace(FqField::get(p, f), 1), kNormHeight);
        o.need(r.power_is_minus_id, q + " r_tau power = -Id");
        o.need(!r.search.lambda, q + " no norm -1 element");
        o.need(r.cm, q + " CM verdict");
        o.need(r.obstruction && r.transcript.all_passed(), q + " obstruction");
        o.note(q + " k_a=" + std::to_string(r.k_a) + " CM=" + (r.cm ? "yes" : "no") +
               " searched=" + std::to_string(r.search.candidates) + (r.search.exhausted ? " (exhausted)" : ""));
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto show = [](const std::vector<Place>& s) {
        std::string r = "{";
        for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + s[i].str();
        return r + "}";
    };
    const std::vector<Place> r5 = quaternion_ramification(-1, -5), r3 = quaternion_ramification(-1, -3);
    o.need(r5 == std::vector<Place>{Place::prime(5), Place::infinity()}, "(-1,-5) -> {5,inf}, got " + show(r5));
    o.need(r3 == std::vector<Place>{Place::prime(3), Place::infinity()}, "(-1,-3) -> {3,inf}, got " + show(r3));
    o.need(hilbert_symbol(-1, -1, Place::prime(2)) == -1, "(-1,-1)_2 = -1");
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int t = 0; t < kProductFormulaPairs; ++t) {
        long a = static_cast<long>(rng() % 401) - 200, b = static_cast<long>(rng() % 401) - 200;
        if (!a) a = 1;
        if (!b) b = -1;
        std::vector<long> primes{2};
        for (long x : {std::labs(a), std::labs(b)})
            for (long d = 3; d <= x; d += 2)
                if (x % d == 0 && is_prime(d)) primes.push_back(d);
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        int prod = hilbert_symbol(a, b, Place::infinity());
        for (long v : primes) prod *= hilbert_symbol(a, b, Place::prime(v));
        o.need(prod == 1, "product formula for (" + std::to_string(a) + "," + std::to_string(b) + ")");
        ++checked;
    }
    o.note(std::to_string(checked) + " product-formula pairs");
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (auto [p, f] : {std::pair{3L, 1}, std::pair{5L, 1}, std::pair{3L, 2}}) {
        WeilModel w = model(p, f, CoeffField::rational(p));
        const std::string q = "q=" + std::to_string(w.dim());
        MarkedRep rho = w.heisenberg_rep();
        o.need(intertwiners(rho, rho).size() == 1, q + " commutant dim 1");
        std::vector<long> h;
        for (long u : w.field().galois_group())
            if (iso_test(rho, rho.galois_conjugate(u))) h.push_back(u);
        o.need(h == std::vector<long>{1}, q + " H(rho) = {id}");
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    CocycleCert c3 = cocycle_certificate(model(3, 1, CoeffField::rational(3)), true, 0, 1);
    o.need(c3.exhaustive && c3.pairs == 576 && c3.ok(), "Sp(2,3) exhaustive cocycle");
    CocycleCert c5 = cocycle_certificate(model(5, 1, CoeffField::rational(5)), false, kCocycleSamples, 1);
    o.need(c5.pairs == kCocycleSamples && c5.ok(), "Sp(2,5) sampled cocycle");
    o.note("cocycle +1/-1 counts " + std::to_string(c3.plus) + "/" + std::to_string(c3.minus) + " and " +
           std::to_string(c5.plus) + "/" + std::to_string(c5.minus));
    for (long p : {3L, 5L}) {
        WeilModel w = model(p, 1, CoeffField::rational(p));
        o.need(intertwining_check(w).all_passed(), "intertwining q=" + std::to_string(p));
        for (long u : w.field().galois_group())
            o.need(semilinearity_check(w, u, 1, 20).all_passed(), "semilinearity u=" + std::to_string(u));
        for (Fq g = 1; g < static_cast<Fq>(p); ++g)
            o.need(weil_twist_check(w.space(), w.psi(), g).all_passed(), "conjugation gamma=" + std::to_string(g));
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (long p : {3L, 5L}) {
        WeilModel w = model(p, 1, CoeffField::rational(p));
        OrbitDecomposition d = orbit_decomposition(w.heisenberg_rep(), SubfieldTag::prime(w.field()));
        o.need(d.m == 1 && d.n == static_cast<std::size_t>(p - 1), "(m,n) = (1,p-1) at p=" + std::to_string(p));
        o.need(d.blocks_match, "orbit blocks at p=" + std::to_string(p));
    }
    CoeffField K = CoeffField::rational(5);
    WeilModel w = model(5, 1, K);
    EndAlgebra e = endomorphism_algebra(w.rep(Part::odd), values_field(K, {gauss_sum(K, 5)}));
    o.need(e.dim == 4 && !e.commutative && e.m == 2, "odd part q=5 End: dim 4, noncommutative, m=2");
    o.note("End dim " + std::to_string(e.dim) + ", m " + std::to_string(e.m));
    return o;
}

Outcome criterion8() {
    Outcome o;
    for (long p : {3L, 5L}) {
        WeilModel w = model(p, 1, CoeffField::rational(p));
        const std::string q = "q=" + std::to_string(p);
        CommutingPair pair = center_pair(w);
        ThetaSuite t = theta_suite(pair, sign_characters(pair));
        o.need(t.transcript.all_passed() && t.irr, q + " suite");
        o.need(t.uni, q + " (Uni)");
        o.need(t.lifts.size() == 2 && t.lifts[0].theta.dim == w.part_dim(Part::even) &&
                   t.lifts[1].theta.dim == w.part_dim(Part::odd),
               q + " Theta(triv), Theta(sgn) dims");
        for (long u : w.field().galois_group())
            o.need(theta_galois_equivariance(w.space(), w.psi(), u).all_passed(), q + " equivariance u=" + std::to_string(u));
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    OddRealisation r = realise_odd(SymplecticSpace(FqField::get(5, 1), 1), 7);
    o.need(r.result.transcript.all_passed(), "transcript");
    o.need(r.target == r.character_field, "realised over the character field");
    o.need(r.lambda.has_value(), "norm equation solved");
    if (r.lambda) {
        int deg = r.target.field().degree() / r.target.degree();
        o.need(norm_by_conjugates(*r.lambda, r.generator, deg) == r.target.field().from_int(-1), "N(lambda) = -1");
    }
    WeilModel w = model(5, 1, odd_ambient_field(5, 7));
    o.need(iso_test(r.result.model, w.rep(Part::odd)).has_value(), "round trip");
    o.note("field " + subfield_name(r.target));
    return o;
}

Outcome criterion10() {
    Outcome o;
    CoeffField K = CoeffField::rational(8);
    const CycloNum z = K.zeta();
    const SubfieldTag Q = SubfieldTag::prime(K), Z8 = SubfieldTag::whole(K);
    const SubfieldTag Qm2 = values_field(K, {z + z.pow(3)}), Qm1 = values_field(K, {z.pow(2)}),
                      Q2 = values_field(K, {z - z.pow(3)});
    struct Row {
        SquareClassGroupA A;
        SubfieldTag even, odd_char, odd_real;
        std::optional<SubfieldTag> odd_alt;
        int index;
    };
    const std::vector<Row> rows{
        {SquareClassGroupA::full, Q, Q, Qm2, Qm1, 2},
        {SquareClassGroupA::class3, Qm2, Qm2, Qm2, std::nullopt, 1},
        {SquareClassGroupA::class5, Qm1, Qm1, Qm1, std::nullopt, 1},
        {SquareClassGroupA::classMinus1, Q2, Q2, Z8, std::nullopt, 2},
        {SquareClassGroupA::squaresOnly, Z8, Z8, Z8, std::nullopt, 1},
    };
    for (const Row& r : rows) {
        P2Tables t = p2_field_tables(r.A);
        const std::string n = square_class_name(r.A);
        o.need(t.even.character_field == r.even && t.even.realisation_field == r.even, n + " even part");
        o.need(t.odd.character_field == r.odd_char, n + " odd character field");
        o.need(t.odd.realisation_field == r.odd_real, n + " odd realisation field");
        o.need(t.odd.alternative_field == r.odd_alt, n + " odd alternative field");
        o.need(t.odd.schur_index == r.index, n + " Schur index");
    }
    o.need(compute_A_for_Q2() == SquareClassGroupA::squaresOnly, "A for Q_2");
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> all{
        {"1 character fields", criterion1},    {"2 constructive realisations", criterion2},
        {"3 obstruction suite", criterion3},   {"4 quaternion invariants", criterion4},
        {"5 Stone-von Neumann", criterion5},   {"6 Weil-model properties", criterion6},
        {"7 scalar extension", criterion7},    {"8 theta suite", criterion8},
        {"9 modular mode", criterion9},        {"10 p = 2 tables", criterion10},
    };
    int failed = 0;
    for (const auto& [name, fn] : all) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.ok;
        std::printf("criterion %-28s %s  [%s] %s\n", name, o.ok ? "PASS" : "FAIL", fmt(seconds_since(t0)).c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
