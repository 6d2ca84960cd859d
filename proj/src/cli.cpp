#include "iet/cli.hpp"

#include <functional>
#include <sstream>

#include "iet/error.hpp"
#include "iet/json_io.hpp"

namespace iet::cli {

namespace {

struct Style {
    bool color;
    std::string yes(const std::string& s) const { return color ? "\033[32m" + s + "\033[0m" : s; }
    std::string no(const std::string& s) const { return color ? "\033[31m" + s + "\033[0m" : s; }
    std::string verdict(bool v) const { return v ? yes("yes") : no("no"); }
};

std::string format_wedge(const WedgeElement& w) {
    auto entries = w.nonzero_entries();
    if (entries.empty()) return "0";
    const auto& ctx = *w.context();
    std::ostringstream out;
    bool first = true;
    for (const auto& e : entries) {
        Rational mag = abs(e.value);
        if (first)
            out << (e.value < 0 ? "-" : "");
        else
            out << (e.value < 0 ? " - " : " + ");
        first = false;
        if (mag != 1) out << mag.get_str() << "*";
        out << "(" << ctx.entry(e.i).name << " ^ " << ctx.entry(e.j).name << ")";
    }
    return out.str();
}

std::string format_iet(const Iet& f) {
    std::ostringstream out;
    out << f.interval_count() << "-IET on [" << format_scalar(f.left()) << ", " << format_scalar(f.right())
        << ")\n  lengths:";
    for (const auto& l : f.lengths()) out << "  " << format_scalar(l);
    out << "\n  perm:    (";
    for (std::size_t k = 0; k < f.perm().size(); ++k) out << (k ? " " : "") << f.perm()[k] + 1;
    out << ")\n";
    return out.str();
}

struct Endpoints {
    QuadraticForm left;
    QuadraticForm right;
};

Endpoints subinterval(const JobSpec& job) {
    if (!job.y_left || !job.y_right)
        throw Error(ErrorCode::SchemaError, "induce needs --y-left and --y-right");
    return {parse_quadratic(*job.y_left), parse_quadratic(*job.y_right)};
}

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Check> run_checks(const Iet& f, const JobSpec& job) {
    std::vector<Check> checks;
    auto add = [&](std::string name, const std::function<bool()>& test) {
        try {
            bool passed = test();
            checks.push_back({std::move(name), passed, ""});
        } catch (const Error& e) {
            checks.push_back({std::move(name), false, e.what()});
        }
    };
    add("canonical form is a fixpoint", [&] { return Iet::make(f.context(), f.left(), f.lengths(), f.perm()) == f; });
    add("r - 1 discontinuities", [&] { return f.discontinuities().size() + 1 == f.interval_count(); });
    add("translation constants consistent",
        [&] { return translation_constants(f.lengths(), f.perm()) == f.gammas(); });
    add("sum lambda_k gamma_k = 0", [&] {
        QMatrix m = displacement_tensor(f);
        return (m + m.transpose()).is_zero();
    });
    add("f o f^-1 = id and f^-1 o f = id", [&] {
        Iet inv = inverse(f);
        return compose(f, inv).is_identity() && compose(inv, f).is_identity();
    });
    add("SAF(f o f) = 2 SAF(f)", [&] { return saf(compose(f, f)) == Rational(2) * saf(f); });
    add("SAF(f^-1) = -SAF(f)", [&] { return saf(inverse(f)) == -saf(f); });
    add("apply(f o f, x) = f(f(x)) at sample points", [&] {
        Iet ff = compose(f, f);
        for (std::size_t k = 0; k < f.interval_count(); ++k) {
            Scalar start = f.source_starts()[k];
            for (const Scalar& x : {start, start + f.lengths()[k] / Rational(3)})
                if (!(ff.apply(x) == f.apply(f.apply(x)))) return false;
        }
        return true;
    });
    add("G_per membership implies G_1 membership", [&] {
        auto report = member_G1(f);
        return !report.in_gper || report.in_g1;
    });
    if (f.interval_count() == 3 && f.perm() == Permutation{2, 1, 0}) {
        add("3-IET closed form matches SAF", [&] {
            return saf_3iet_closed_form(f.lengths()[0], f.lengths()[2], f.length()) == saf(f);
        });
    }
    add("factorization round-trip when in G_1", [&] {
        if (!member_G1(f).in_g1) return true;
        factor_through_rotation(f);  // asserts its own postconditions
        return true;
    });
    add("JSON round-trip", [&] {
        std::string text = serialize_iet(f);
        Iet back = parse_iet_document(text);
        return back == f && serialize_iet(back) == text;
    });
    (void)job;
    return checks;
}

JobOutcome dispatch(const JobSpec& job) {
    Style style{job.color};
    JobOutcome out;
    std::ostringstream text;
    bool as_json = job.format == Format::Json;
    auto emit = [&](const json& j) { out.output = j.dump(2) + "\n"; };

    std::size_t needed = job.command == Command::Compose ? 2 : 1;
    if (job.documents.size() != needed)
        throw Error(ErrorCode::SchemaError, std::string(command_name(job.command)) + " takes " +
                                                std::to_string(needed) + " input document(s)");
    Iet f = parse_iet_document(job.documents[0]);

    switch (job.command) {
        case Command::Saf: {
            WedgeElement w = saf(f);
            if (as_json) emit(json{{"saf", wedge_to_json(w)}, {"context", context_to_json(*w.context())}});
            else text << "SAF = " << format_wedge(w) << "\n";
            break;
        }
        case Command::Member: {
            if (job.member_class != "g1" && job.member_class != "gper")
                throw Error(ErrorCode::SchemaError, "--class must be 'gper' or 'g1'");
            MembershipReport report = member_G1(f, job.with_factorization);
            bool affirmative = job.member_class == "gper" ? report.in_gper : report.in_g1;
            out.exit_code = affirmative ? kOk : kNegative;
            if (as_json) {
                json j = report_to_json(report);
                j["class"] = job.member_class;
                j["context"] = context_to_json(*f.context());
                emit(j);
            } else {
                text << "SAF     = " << format_wedge(report.saf) << "\n"
                     << "in G_per: " << style.verdict(report.in_gper) << "\n"
                     << "in G_1  : " << style.verdict(report.in_g1) << "\n";
                if (!report.obstruction.empty()) {
                    text << "obstruction (coefficients in the basis with v_1 = |X|):\n";
                    for (const auto& o : report.obstruction)
                        text << "  p'(" << o.i << "," << o.j << ") = " << o.value.get_str() << "\n";
                }
                if (report.factorization) {
                    text << "g:\n" << format_iet(report.factorization->g) << "h1:\n"
                         << format_iet(report.factorization->h1) << "h2:\n"
                         << format_iet(report.factorization->h2);
                }
            }
            break;
        }
        case Command::Factor: {
            Factorization fac = factor_through_rotation(f);
            if (as_json) {
                emit(factorization_to_json(fac));
            } else {
                text << "f = g o h2 = h1 o g (verified exactly; SAF(h1) = SAF(h2) = 0)\n"
                     << "g:\n" << format_iet(fac.g) << "h1:\n" << format_iet(fac.h1) << "h2:\n" << format_iet(fac.h2);
            }
            break;
        }
        case Command::Induce: {
            Endpoints y = subinterval(job);
            SafPreservation check = check_saf_preserved(f, y.left, y.right, job.keane_depth, job.induce_cap);
            const InductionResult& r = check.induction;
            bool extra = r.induced.interval_count() > r.source_intervals + 1;
            if (as_json) {
                json j = induction_to_json(r);
                j["saf_preserved"] = check.preserved;
                j["minimality_attested"] = check.minimality_attested;
                j["keane"] = keane_to_json(check.keane);
                j["exceeds_r_plus_1"] = extra;
                emit(j);
            } else {
                text << "induced map:\n" << format_iet(r.induced) << "return times:";
                for (const auto& p : r.pieces) text << " " << p.return_time;
                text << "\nmax return: " << r.max_return << "\n"
                     << "SAF(f_Y) = SAF(f): " << style.verdict(check.preserved) << "\n"
                     << "minimality attested (Keane, depth " << job.keane_depth
                     << "): " << style.verdict(check.minimality_attested) << "\n";
                if (extra) text << "note: induced map exchanges more than r + 1 intervals\n";
            }
            break;
        }
        case Command::Rank: {
            std::size_t rank = rank_of_iet(f);
            if (as_json) emit(json{{"rank", rank}});
            else text << "rank = " << rank << "\n";
            break;
        }
        case Command::Order: {
            auto n = order(f, job.order_cap);
            out.exit_code = n ? kOk : kNegative;
            if (as_json) {
                emit(n ? json{{"order", *n}} : json{{"order", nullptr}, {"exceeds_cap", job.order_cap}});
            } else if (n) {
                text << "order = " << *n << "\n";
            } else {
                text << "order exceeds " << job.order_cap << "\n";
            }
            break;
        }
        case Command::Compose: {
            Iet g = parse_iet_document(job.documents[1]);
            Iet h = compose(f, g);
            if (as_json) emit(iet_to_json(h));
            else text << format_iet(h);
            break;
        }
        case Command::Check: {
            auto checks = run_checks(f, job);
            KeaneVerdict keane = keane_check(f, job.keane_depth);
            bool all = true;
            json list = json::array();
            for (const auto& c : checks) {
                all = all && c.passed;
                if (as_json) {
                    list.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
                } else {
                    text << (c.passed ? style.yes("PASS") : style.no("FAIL")) << "  " << c.name;
                    if (!c.detail.empty()) text << "  (" << c.detail << ")";
                    text << "\n";
                }
            }
            out.exit_code = all ? kOk : kNegative;
            if (as_json) {
                emit(json{{"checks", std::move(list)}, {"all_passed", all}, {"keane", keane_to_json(keane)}});
            } else {
                text << "Keane condition up to depth " << keane.depth << ": "
                     << (keane.satisfied() ? "no coincidence found (not a proof of minimality)"
                                           : "violated at step " + std::to_string(keane.violation->step))
                     << "\n";
            }
            break;
        }
    }
    if (!as_json) out.output = text.str();
    return out;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::AmbiguousSign:
        case ErrorCode::CapExceeded:
        case ErrorCode::InternalAssertion: return kComputationLimit;
        case ErrorCode::NotInG1:
        case ErrorCode::NotInKX: return kNegative;
        default: return kInputError;
    }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::Saf, Command::Member, Command::Factor, Command::Induce, Command::Rank,
                      Command::Order, Command::Compose, Command::Check})
        if (name == command_name(c)) return c;
    return std::nullopt;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Saf: return "saf";
        case Command::Member: return "member";
        case Command::Factor: return "factor";
        case Command::Induce: return "induce";
        case Command::Rank: return "rank";
        case Command::Order: return "order";
        case Command::Compose: return "compose";
        case Command::Check: return "check";
    }
    return "?";
}

JobOutcome run(const JobSpec& job) {
    set_default_precision_cap(job.precision_bits);
    try {
        return dispatch(job);
    } catch (const Error& e) {
        return {exit_code_for(e.code()), "", e.what()};
    } catch (const std::exception& e) {
        return {kInputError, "", e.what()};
    }
}

}  // namespace iet::cli
