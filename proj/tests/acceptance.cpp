// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "helpers.hpp"
#include "iet/cli.hpp"
#include "iet/json_io.hpp"
#include "iet/oracle.hpp"

using namespace testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.ok) {
        o.ok = false;
        o.detail = what;
    }
}

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

ContextPtr sqrt2_sqrt3() { return symbolic_radicals({2, 3}); }

// 1. saf(f o g) = saf(f) + saf(g) and saf(f^-1) = -saf(f).
Outcome homomorphism() {
    Outcome o;
    auto start = Clock::now();
    Gen gen(1001);
    std::map<std::string, ContextPtr> kinds{{"rational", BasisContext::rational()},
                                            {"Q(sqrt 2)", BasisContext::quadratic(2)},
                                            {"Q(sqrt 5)", BasisContext::quadratic(5)},
                                            {"symbolic{1,sqrt2,sqrt3}", sqrt2_sqrt3()}};
    int pairs = 0, nonzero = 0;
    for (const auto& [name, ctx] : kinds) {
        for (int n = 0; n < 200; ++n) {
            Iet f = gen.iet(ctx, 5), g = gen.iet(ctx, 5);
            WedgeElement sf = saf(f), sg = saf(g);
            expect(o, saf(compose(f, g)) == sf + sg, "homomorphism fails in " + name);
            expect(o, saf(inverse(f)) == -sf, "inverse law fails in " + name);
            nonzero += !sf.is_zero();
            ++pairs;
        }
    }
    double t = seconds_since(start);
    expect(o, t < 30.0, "runtime above 30 s");
    if (o.ok) {
        std::ostringstream s;
        s << pairs << " pairs over 4 context kinds, " << nonzero << " with nonzero SAF, " << t << " s";
        o.detail = s.str();
    }
    return o;
}

// Reversal 3-IETs with ranks 1, 2 and 3.
std::vector<Iet> reversal_family() {
    Gen gen(1002);
    std::vector<Iet> out;
    auto add = [&](const ContextPtr& ctx, const Scalar& total, bool irrational) {
        auto l = gen.partition(ctx, total, 3, irrational);
        out.push_back(reversal(ctx, l[0], l[1], l[2]));
    };
    auto sym = sqrt2_sqrt3();
    for (int n = 0; n < 50; ++n) add(BasisContext::rational(), one(BasisContext::rational()), false);
    for (int n = 0; n < 50; ++n) add(sym, one(sym), false);
    for (long d : {2L, 3L, 5L, 7L})
        for (int n = 0; n < 15; ++n) {
            auto k = BasisContext::quadratic(d);
            add(k, one(k), true);
        }
    // rank 2 with an irrational domain length: lengths in span{sqrt 2, sqrt 3}
    for (int n = 0; n < 40; ++n) {
        Scalar total = expr(sym, "sqrt(2)") * rat(gen.integer(1, 3), 1) + expr(sym, "sqrt(3)") * rat(gen.integer(1, 3), 2);
        for (;;) {
            Scalar a = expr(sym, "sqrt(2)") * rat(gen.integer(1, 9), 20) + expr(sym, "sqrt(3)") * rat(gen.integer(0, 4), 20);
            Scalar c = expr(sym, "sqrt(2)") * rat(gen.integer(0, 4), 20) + expr(sym, "sqrt(3)") * rat(gen.integer(1, 9), 20);
            if (scalar_sign(total - a - c) != Sign::Positive) continue;
            out.push_back(reversal(sym, a, total - a - c, c));
            break;
        }
    }
    out.push_back(reversal(sym, expr(sym, "sqrt(2)/2-1/2"), expr(sym, "sqrt(3)/2-1/2"),
                           one(sym) * Rational(2) - expr(sym, "sqrt(2)/2") - expr(sym, "sqrt(3)/2")));
    while (out.size() < 300) add(sym, one(sym), true);
    return out;
}

// 2. member_G1 iff rank <= 2 on reversal 3-IETs.
Outcome three_iet_criterion(const std::vector<Iet>& family) {
    Outcome o;
    std::map<std::size_t, int> by_rank;
    int disagreements = 0;
    for (const auto& f : family) {
        std::size_t rank = rank_of_iet(f);
        ++by_rank[rank];
        if (member_G1(f).in_g1 != (rank <= 2)) ++disagreements;
    }
    expect(o, family.size() == 300, "family size " + std::to_string(family.size()));
    expect(o, disagreements == 0, std::to_string(disagreements) + " disagreements");
    for (std::size_t r : {1, 2, 3}) expect(o, by_rank[r] >= 50, "too few rank-" + std::to_string(r) + " samples");

    auto sym = sqrt2_sqrt3();
    Iet named = reversal(sym, expr(sym, "sqrt(2)/2-1/2"), expr(sym, "sqrt(3)/2-1/2"),
                         one(sym) * Rational(2) - expr(sym, "sqrt(2)/2") - expr(sym, "sqrt(3)/2"));
    expect(o, rank_of_iet(named) == 3 && !member_G1(named).in_g1, "named rank-3 example is in G_1");
    if (o.ok) {
        std::ostringstream s;
        s << "ranks 1/2/3: " << by_rank[1] << "/" << by_rank[2] << "/" << by_rank[3] << ", 0 disagreements";
        o.detail = s.str();
    }
    return o;
}

// 3. closed form equals saf() on the same family.
Outcome closed_form(const std::vector<Iet>& family) {
    Outcome o;
    for (const auto& f : family)
        expect(o, saf_3iet_closed_form(f.lengths()[0], f.lengths()[2], f.length()) == saf(f),
               "closed form differs for lengths " + format_scalar(f.lengths()[0]));
    if (o.ok) o.detail = std::to_string(family.size()) + " reversals; realized sign: |X|^(l3 - l1) - l1^l3";
    return o;
}

// 4. f = g o h2 = h1 o g on random G_1 members.
Outcome factorization() {
    Outcome o;
    Gen gen(1004);
    auto sym = sqrt2_sqrt3();
    std::vector<Iet> members;
    for (long d : {2L, 3L, 5L})
        for (int n = 0; n < 7; ++n) members.push_back(gen.iet(BasisContext::quadratic(d), 5));
    while (members.size() < 35) {
        Iet rot = rotation(sym, gen.partition(sym, one(sym), 2)[0]);
        Iet per = gen.iet(sym, 5, false);
        members.push_back(gen.coin() ? compose(rot, per) : compose(per, rot));
    }
    while (members.size() < 50) {
        Scalar a = expr(sym, "sqrt(3)") * rat(gen.integer(1, 6), 20) + Scalar::from_rational(sym, rat(gen.integer(0, 5), 20));
        Scalar c = Scalar::from_rational(sym, rat(gen.integer(1, 6), 20)) - expr(sym, "sqrt(3)") * rat(gen.integer(0, 2), 40);
        if (scalar_sign(c) != Sign::Positive || scalar_sign(one(sym) - a - c) != Sign::Positive) continue;
        members.push_back(reversal(sym, a, one(sym) - a - c, c));
    }
    int nontrivial = 0;
    for (const auto& f : members) {
        MembershipReport r = member_G1(f, true);
        expect(o, r.in_g1 && r.factorization, "sample is not a G_1 member");
        if (!r.factorization) continue;
        const Factorization& fac = *r.factorization;
        expect(o, compose(fac.g, fac.h2) == f, "f != g o h2");
        expect(o, compose(fac.h1, fac.g) == f, "f != h1 o g");
        expect(o, saf(fac.h1).is_zero() && saf(fac.h2).is_zero(), "h1 or h2 has nonzero SAF");
        nontrivial += !fac.g.is_identity();
    }
    if (o.ok) o.detail = std::to_string(members.size()) + " members, " + std::to_string(nontrivial) + " with a nontrivial rotation";
    return o;
}

// 5. compose, order and cell-aligned induce against the cell oracle.
Outcome oracle_equivalence() {
    Outcome o;
    auto start = Clock::now();
    Gen gen(1005);
    auto r = BasisContext::rational();
    int inductions = 0;
    for (int n = 0; n < 500; ++n) {
        std::size_t q = gen.integer(2, 24);
        Iet f = gen.cell_iet(r, q, 7), g = gen.cell_iet(r, q, 7);
        oracle::CellPermutation cf = oracle::to_cells(f, q), cg = oracle::to_cells(g, q);
        expect(o, oracle::to_cells(compose(f, g), q) == oracle::brute_compose(cf, cg), "compose mismatch");
        expect(o, order(f, 100000000) == oracle::brute_order(cf), "order mismatch");

        std::size_t a = gen.integer(0, static_cast<long>(q) - 1);
        std::size_t b = gen.integer(static_cast<long>(a) + 1, static_cast<long>(q));
        InductionResult ind = induce(f, Scalar::from_rational(r, rat(a, q)), Scalar::from_rational(r, rat(b, q)));
        oracle::CellInduction brute = oracle::brute_induce(cf, a, b - a);
        expect(o, oracle::to_cells(ind.induced, b - a) == brute.induced, "induced map mismatch");
        for (std::size_t c = 0; c < b - a; ++c) {
            Scalar cell = Scalar::from_rational(r, rat(a + c, q));
            for (const auto& p : ind.pieces)
                if (compare(p.start, cell) <= 0 && less(cell, p.start + p.length))
                    expect(o, p.return_time == brute.return_times[c], "return time mismatch");
        }
        ++inductions;
    }
    double t = seconds_since(start);
    expect(o, t < 60.0, "runtime above 60 s");
    if (o.ok) {
        std::ostringstream s;
        s << "500 maps with q <= 24 (" << inductions << " inductions), " << t << " s";
        o.detail = s.str();
    }
    return o;
}

// 6. saf(f_Y) = saf(f) for the rotation by sqrt 2 - 1.
Outcome saf_preservation() {
    Outcome o;
    auto k = BasisContext::quadratic(2);
    Iet f = rotation(k, expr(k, "sqrt(2)-1"));
    expect(o, keane_check(f, kDefaultKeaneDepth).satisfied(), "Keane check failed");
    std::vector<std::pair<std::string, std::string>> ys{
        {"0", "1/2"},           {"0", "sqrt(2)-1"},        {"1/3", "3/4"},          {"sqrt(2)-1", "1"},
        {"1/10", "9/10"},       {"0", "3-2*sqrt(2)"},      {"1/2", "sqrt(2)/2"},    {"3-2*sqrt(2)", "1/2"},
        {"2/7", "5/7"},         {"sqrt(2)/4", "3/4"},      {"0", "1/7"},            {"1/5", "sqrt(2)-1"},
        {"1/4", "sqrt(2)/2+1/4"}, {"2-sqrt(2)", "1"},      {"1/8", "1/8+sqrt(2)/8"}, {"0", "2/3"},
        {"sqrt(2)/2-1/2", "1/2"}, {"1/2", "1"},            {"3/5", "sqrt(2)-1/2"},  {"1/100", "99/100"}};
    int done = 0;
    std::size_t widest = 0;
    for (const auto& [a, b] : ys) {
        InductionResult r = induce(f, expr(k, a), expr(k, b));
        expect(o, saf(r.induced) == saf(f), "SAF changed on [" + a + ", " + b + ")");
        widest = std::max(widest, r.induced.interval_count());
        ++done;
    }
    expect(o, done == 20, "expected 20 subintervals");
    if (o.ok) o.detail = "20 subintervals, induced maps up to " + std::to_string(widest) + " intervals";
    return o;
}

// 7. f_Y in G_1(Y) iff |Y| in Q(sqrt 2).
Outcome quadratic_field_theorem() {
    Outcome o;
    auto k = BasisContext::quadratic(2);
    Iet f = rotation(k, expr(k, "sqrt(2)-1"));
    std::ostringstream s;
    for (const char* len : {"1/2", "sqrt(2)/2-1/2", "3-2*sqrt(2)"}) {
        InductionResult r = induce(f, parse_quadratic("0"), parse_quadratic(len));
        bool in = member_G1(r.induced).in_g1;
        expect(o, in, std::string("|Y| = ") + len + " gave not in G_1");
        s << len << ": " << (in ? "in" : "out") << "; ";
    }
    InductionResult r = induce(f, parse_quadratic("0"), parse_quadratic("sqrt(3)/3"));
    bool in = member_G1(r.induced).in_g1;
    expect(o, r.induced.context()->size() == 3, "sqrt(3)/3 was not adjoined");
    expect(o, !in, "|Y| = sqrt(3)/3 gave in G_1");
    s << "sqrt(3)/3 (adjoined): " << (in ? "in" : "out");
    if (o.ok) o.detail = s.str();
    return o;
}

// 8. G_1-inducing subintervals for decomposable SAF, none for rank 4.
Outcome inducing_subinterval() {
    Outcome o;
    auto k2 = BasisContext::quadratic(2);
    auto k5 = BasisContext::quadratic(5);
    auto sym = sqrt2_sqrt3();
    std::vector<Iet> cases{
        rotation(k2, expr(k2, "sqrt(2)-1")),
        rotation(k5, expr(k5, "sqrt(5)/2-1/2")),
        reversal(k2, expr(k2, "sqrt(2)-1"), expr(k2, "1/2"), expr(k2, "3/2-sqrt(2)")),
        reversal(sym, expr(sym, "sqrt(2)/2-1/2"), expr(sym, "sqrt(3)/2-1/2"),
                 one(sym) * Rational(2) - expr(sym, "sqrt(2)/2") - expr(sym, "sqrt(3)/2")),
    };
    Gen gen(1008);
    while (cases.size() < 10) {
        Iet f = gen.iet(sym, 4);
        if (f.interval_count() >= 3 && !saf(f).is_zero() && keane_check(f, kDefaultKeaneDepth).satisfied())
            cases.push_back(f);
    }
    int found = 0;
    for (const auto& f : cases) {
        expect(o, keane_check(f, kDefaultKeaneDepth).satisfied(), "sample not attested minimal");
        auto y = find_G1_inducing_subinterval(f);
        expect(o, y.has_value(), "no subinterval for a decomposable SAF");
        if (!y) continue;
        expect(o, member_G1(y->induction.induced).in_g1, "induced map not in G_1");
        expect(o, less(y->left, y->right) && compare(y->right, f.right()) <= 0, "Y outside the domain");
        ++found;
    }

    auto c4 = symbolic_radicals({2, 3, 5});
    Scalar a = expr(c4, "sqrt(3)/10"), c = expr(c4, "sqrt(5)/10");
    Iet engineered = compose(reversal(c4, a, one(c4) - a - c, c), rotation(c4, expr(c4, "sqrt(2)-1")));
    std::size_t rank = qmat_rank(saf(engineered).matrix());
    expect(o, rank == 4, "engineered SAF has rank " + std::to_string(rank));
    expect(o, !find_G1_inducing_subinterval(engineered).has_value(), "rank-4 SAF was reported decomposable");
    if (o.ok)
        o.detail = std::to_string(found) + " decomposable cases verified; engineered " +
                   std::to_string(engineered.interval_count()) + "-IET with rank-4 SAF: NoneDecomposable";
    return o;
}

// 9. membership verdicts survive conjugate_affine.
Outcome conjugation_stability() {
    Outcome o;
    Gen gen(1009);
    auto sym = sqrt2_sqrt3();
    std::vector<Iet> samples;
    for (long d : {2L, 5L}) {
        auto k = BasisContext::quadratic(d);
        for (int n = 0; n < 5; ++n) samples.push_back(gen.iet(k, 5));
        samples.push_back(gen.iet(k, 4, false));
    }
    for (int n = 0; n < 6; ++n) samples.push_back(gen.iet(sym, 5));
    for (int n = 0; n < 3; ++n) samples.push_back(gen.iet(sym, 4, false));
    for (const auto& f : reversal_family())
        if (f.context()->kind() == ContextKind::Symbolic && samples.size() < 30 && rank_of_iet(f) == 3) samples.push_back(f);

    int gper = 0, g1 = 0, checks = 0;
    for (const auto& f : samples) {
        bool in_per = member_Gper(f), in_g1 = member_G1(f).in_g1;
        gper += in_per;
        g1 += in_g1;
        const ContextPtr& ctx = f.context();
        for (int t = 0; t < 10; ++t) {
            Scalar left = Scalar::from_rational(ctx, gen.rational(20, 7)) + gen.wobble(ctx);
            Scalar len = Scalar::from_rational(ctx, rat(gen.integer(1, 40), gen.integer(1, 9)));
            if (ctx->kind() == ContextKind::Quadratic && gen.coin()) {
                len += Scalar::unit(ctx, 1) * rat(gen.integer(1, 5), 3);
            }
            Iet h = conjugate_affine(f, left, len);
            expect(o, member_Gper(h) == in_per, "G_per verdict changed under conjugation");
            expect(o, member_G1(h).in_g1 == in_g1, "G_1 verdict changed under conjugation");
            ++checks;
        }
    }
    expect(o, gper > 0 && gper < static_cast<int>(samples.size()), "G_per verdicts not mixed");
    expect(o, g1 > 0 && g1 < static_cast<int>(samples.size()), "G_1 verdicts not mixed");
    if (o.ok) {
        std::ostringstream s;
        s << samples.size() << " samples x 10 targets; " << gper << " in G_per, " << g1 << " in G_1";
        o.detail = s.str();
    }
    return o;
}

// 10. the shipped corpus runs at default precision without AmbiguousSign; total time < 5 min.
Outcome corpus_and_runtime(Clock::time_point suite_start) {
    Outcome o;
    using namespace iet::cli;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(IETSAF_DATA_DIR))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    int runs = 0;
    for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream text;
        text << in.rdbuf();
        for (Command c : {Command::Saf, Command::Member, Command::Factor, Command::Rank, Command::Order,
                          Command::Check, Command::Induce}) {
            JobSpec job;
            job.command = c;
            job.documents = {text.str()};
            Iet f = parse_iet_document(text.str());
            job.y_left = "0";
            job.y_right = "1/2";
            if (c == Command::Induce && !f.left().is_zero()) continue;
            JobOutcome r = run(job);
            expect(o, r.exit_code != kComputationLimit,
                   path.filename().string() + " " + command_name(c) + ": " + r.error);
            expect(o, r.exit_code != kInputError, path.filename().string() + " " + command_name(c) + ": " + r.error);
            ++runs;
        }
    }
    expect(o, files.size() >= 8, "corpus is missing");
    double t = seconds_since(suite_start);
    expect(o, t < 300.0, "suite above 5 minutes");
    if (o.ok) {
        std::ostringstream s;
        s << files.size() << " corpus documents, " << runs << " CLI runs at " << default_precision_cap()
          << " bits, no AmbiguousSign; acceptance suite " << t << " s";
        o.detail = s.str();
    }
    return o;
}

}  // namespace

int main() {
    auto suite_start = Clock::now();
    std::vector<Iet> family = reversal_family();
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"SAF homomorphism", homomorphism},
        {"3-IET criterion", [&] { return three_iet_criterion(family); }},
        {"closed form vs definition", [&] { return closed_form(family); }},
        {"factorization round-trip", factorization},
        {"oracle equivalence", oracle_equivalence},
        {"SAF preservation under induction", saf_preservation},
        {"quadratic-field theorem", quadratic_field_theorem},
        {"G_1-inducing subinterval", inducing_subinterval},
        {"conjugation stability", conjugation_stability},
        {"corpus and runtime", [&] { return corpus_and_runtime(suite_start); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " -- "
                  << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
