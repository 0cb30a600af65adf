#include "pluri/cli.hpp"

#include "pluri/errors.hpp"
#include "pluri/format.hpp"
#include "pluri/parse.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

namespace pluri::cli {

const char* const kGrammar = R"(usage: pluri [--precision BITS] [--format markdown|csv|json] [--output PATH] COMMAND

commands:
  threshold nv --g G --n N
  threshold bir --g G --l L
  threshold map4|map3|map2 --g G
  threshold trican --g G
  threshold all-l --g G
  table t1|t2|t3|t4|t5 [--g-range A..B] [--n-range A..B | --l-range A..B]
  higherdim nv|bir --d D (--g G | --v v1,v2,...) [--alpha A]
  higherdim dichotomy nv|bir --d D --l L (--g G | --v v1,v2,...) --beta-bar B
  verify [--precision BITS] [--reference PATH]
  eval "<expression>" [--digits K]

expressions: integers, decimals, a/b, sqrt(x), root(k, x), floor(x), frac(x),
  + - * / and parentheses; radicands must be non-negative rationals.

environment: PLURI_PRECISION_CAP sets the default precision cap (bits, >= 64).
exit codes: 0 ok, 1 domain error, 2 verification mismatch, 3 precision exhausted, 64 usage.
)";

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Range parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const long v = std::stol(s, &used);
            if (used != s.size()) {
                throw Usage("bad range '" + s + "'");
            }
            return {v, v};
        }
        const std::string a = s.substr(0, dots);
        const std::string b = s.substr(dots + 2);
        const long lo = std::stol(a, &used);
        if (used != a.size()) {
            throw Usage("bad range '" + s + "'");
        }
        const long hi = std::stol(b, &used);
        if (used != b.size() || hi < lo) {
            throw Usage("bad range '" + s + "'");
        }
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw Usage("bad range '" + s + "'");
    }
}

std::vector<Rational> parse_profile(const std::vector<std::string>& parts)
{
    std::vector<Rational> v;
    for (const auto& p : parts) {
        try {
            v.push_back(parse_rational(p));
        } catch (const Error&) {
            throw Usage("bad volume '" + p + "' in --v");
        }
    }
    return v;
}

std::string decimal_lo(const Enclosure& e) { return to_decimal(e.lo, kDecimalDigits, Rounding::down); }
std::string decimal_hi(const Enclosure& e) { return to_decimal(e.hi, kDecimalDigits, Rounding::up); }

std::string join(const std::vector<Rational>& v)
{
    std::string s;
    for (const auto& q : v) {
        s += (s.empty() ? "" : ",") + pluri::to_string(q);
    }
    return s;
}

unsigned default_cap()
{
    const char* env = std::getenv(kPrecisionEnv);
    if (env == nullptr || *env == '\0') {
        return Precision{}.cap_bits;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v < 64 || v > (1UL << 24)) {
        throw Usage(std::string(kPrecisionEnv) + " must be an integer >= 64");
    }
    return static_cast<unsigned>(v);
}

struct Options {
    unsigned cap = 4096;
    std::string format = "markdown";
    std::string output;

    long g = 0;
    long n = 0;
    long l = 0;
    long d = 0;
    std::string g_range;
    std::string n_range;
    std::string l_range;
    std::vector<std::string> v;
    std::string alpha;
    std::string beta_bar;
    std::string expr;
    std::string reference;
    int digits = kDecimalDigits;
};

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out), fmt_(parse_format(o.format))
    {
        prec_.cap_bits = o.cap;
    }

    int threshold(const std::string& which)
    {
        if (which == "nv") {
            const NvQuery q{o_.g, o_.n};
            return emit(format_report("nv g=" + std::to_string(q.g) + " n=" + std::to_string(q.n),
                                      nv_threshold(q, prec_), fmt_, prec_));
        }
        if (which == "trican") {
            return emit(format_report("trican g=" + std::to_string(o_.g), trican_threshold(o_.g, prec_), fmt_, prec_));
        }
        if (which == "all-l") {
            const auto r = all_l_threshold(o_.g, prec_);
            return emit(format_report("all-l g=" + std::to_string(o_.g) + " l*=" + std::to_string(r.l_star), r.report,
                                      fmt_, prec_));
        }
        BirQuery q{o_.g, o_.l, parse_bir_kind(which)};
        if (q.kind != BirKind::general) {
            q.l = effective_l(q);
        }
        std::string name = to_string(q.kind);
        name += " g=" + std::to_string(q.g);
        if (q.kind == BirKind::general) {
            name += " l=" + std::to_string(q.l);
        }
        return emit(format_report(name, bir_threshold(q, prec_), fmt_, prec_));
    }

    int table(const std::string& which)
    {
        std::vector<TableRow> rows;
        if (which == "t1") {
            rows = nv_table(range(o_.g_range, {2, 22}), range(o_.n_range, {1, 60}), prec_);
        } else if (which == "t2") {
            rows = bir_table(range(o_.l_range, {5, 14}), range(o_.g_range, {2, 40}), prec_);
        } else if (which == "t3") {
            rows = map_table(BirKind::map4, range(o_.g_range, {2, 60}), prec_);
        } else if (which == "t4") {
            rows = map_table(BirKind::map3, range(o_.g_range, {3, 60}), prec_);
        } else {
            rows = map_table(BirKind::map2, range(o_.g_range, {4, 260}), prec_);
        }
        return emit(format_table(rows, fmt_, prec_));
    }

    int higherdim(const std::string& which)
    {
        const VolumeProfile profile = this->profile();
        const MuProfile mu = mu_profile(profile);
        std::vector<std::pair<std::string, std::string>> f{{"d", std::to_string(o_.d)}, {"v", join(profile.v)}};
        std::optional<RealExpr> alpha;
        if (!o_.alpha.empty()) {
            alpha.emplace(parse_expression(o_.alpha));
        }
        std::optional<AlphaThreshold> t;
        try {
            t = which == "nv" ? nv_alpha_threshold(o_.d, mu, prec_) : bir_alpha_threshold(o_.d, mu, prec_);
        } catch (const DegenerateFraction& e) {
            // Still useful at an explicit alpha.
            if (!alpha) {
                throw;
            }
            f.emplace_back("threshold", std::string("none: ") + e.what());
        }
        std::optional<Integer> approached;
        if (t) {
            approached = ceil_of(t->bound.value, prec_);
            f.emplace_back(which == "nv" ? "Pi" : "s_bar", t->base.to_string());
            f.emplace_back(which == "nv" ? "floor_Pi" : "floor_s_bar", t->floor_base.get_str());
            if (which == "bir") {
                f.emplace_back("t_bar", bir_s_t(o_.d, mu).second.to_string());
            }
            f.emplace_back("threshold", t->bound.to_string());
            f.emplace_back("strict", t->bound.strict ? "true" : "false");
            f.emplace_back("threshold_lo", decimal_lo(t->enclosure));
            f.emplace_back("threshold_hi", decimal_hi(t->enclosure));
            f.emplace_back("approached", approached->get_str());
            f.emplace_back("min_integer", t->min_integer.get_str());
        }
        // Without --alpha report at the approached threshold.
        const RealExpr at = alpha ? *alpha : RealExpr(Rational(*approached));
        f.emplace_back("alpha", at.to_string());
        if (which == "nv") {
            f.emplace_back("M", nv_multiplier(o_.d, at, mu, prec_).get_str());
            f.emplace_back("M_limit", nv_multiplier(o_.d, std::nullopt, mu, prec_).get_str());
        } else {
            f.emplace_back("l_min", bir_l_min(o_.d, at, mu, prec_).get_str());
            f.emplace_back("l_min_limit", bir_l_min(o_.d, std::nullopt, mu, prec_).get_str());
        }
        return emit(format_fields(f, fmt_));
    }

    int dichotomy(const std::string& which)
    {
        const VolumeProfile profile = this->profile();
        const MuProfile mu = mu_profile(profile);
        const RealExpr beta_bar = parse_expression(o_.beta_bar);
        const Bound b = which == "nv" ? dichotomy_nv(o_.d, o_.l, mu, beta_bar, prec_)
                                      : dichotomy_bir(o_.d, o_.l, mu, beta_bar, prec_);
        const Enclosure en = enclose(b.value, Rational(1, 1000000000), prec_);
        std::vector<std::pair<std::string, std::string>> f{
            {"d", std::to_string(o_.d)},
            {"l", std::to_string(o_.l)},
            {"v", join(profile.v)},
            {"beta_bar", beta_bar.to_string()},
            {"bound", b.to_string()},
            {"strict", b.strict ? "true" : "false"},
            {"lo", decimal_lo(en)},
            {"hi", decimal_hi(en)},
            {"min_integer", min_lattice(b, RealExpr(1), prec_).get_str()},
        };
        return emit(format_fields(f, fmt_));
    }

    int verify()
    {
        DiffReport d;
        if (o_.reference.empty()) {
            d = verify_all(prec_);
        } else {
            std::ifstream in(o_.reference, std::ios::binary);
            if (!in) {
                throw Usage("cannot read " + o_.reference);
            }
            const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            d = verify_rows(parse_reference_csv(text), prec_);
        }
        emit(format_diff(d, fmt_));
        if (d.mismatched > 0) {
            return kMismatch;
        }
        return d.undecided > 0 ? kPrecision : kOk;
    }

    int eval()
    {
        const RealExpr e = parse_expression(o_.expr);
        Rational width(1);
        for (int i = 0; i < o_.digits; ++i) {
            width /= 10;
        }
        return emit(format_enclosure(e, enclose(e, width, prec_), fmt_, o_.digits));
    }

private:
    static Range range(const std::string& s, Range fallback) { return s.empty() ? fallback : parse_range(s); }

    VolumeProfile profile() const
    {
        if (!o_.v.empty()) {
            return VolumeProfile{o_.d, parse_profile(o_.v)};
        }
        return default_profile(o_.d, o_.g);
    }

    int emit(const std::string& text)
    {
        if (o_.output.empty()) {
            out_ << text;
            return kOk;
        }
        std::ofstream file(o_.output, std::ios::binary);
        file << text;
        if (!file) {
            throw DomainError("cannot write " + o_.output);
        }
        return kOk;
    }

    const Options& o_;
    std::ostream& out_;
    Format fmt_;
    Precision prec_;
};

int usage(std::ostream& err, const std::string& why)
{
    err << "pluri: " << why << "\n\n" << kGrammar;
    return kUsage;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    try {
        o.cap = default_cap();
    } catch (const Usage& e) {
        return usage(err, e.what());
    }

    CLI::App app{"certified pluricanonical threshold engine", "pluri"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--precision", o.cap, "precision cap in bits")->check(CLI::Range(64U, 1U << 24));
    app.add_option("--format", o.format, "markdown, csv or json");
    app.add_option("--output", o.output, "write to PATH instead of stdout");

    std::string command;
    std::string which;

    auto* threshold = app.add_subcommand("threshold", "single threshold")->require_subcommand(1);
    for (const char* name : {"nv", "bir", "map4", "map3", "map2", "trican", "all-l"}) {
        auto* sub = threshold->add_subcommand(name);
        sub->add_option("--g", o.g)->required();
        if (std::string(name) == "nv") {
            sub->add_option("--n", o.n)->required();
        }
        if (std::string(name) == "bir") {
            sub->add_option("--l", o.l)->required();
        }
        sub->callback([&, name] {
            command = "threshold";
            which = name;
        });
    }

    auto* table = app.add_subcommand("table", "threshold table")->require_subcommand(1);
    for (const char* name : {"t1", "t2", "t3", "t4", "t5"}) {
        auto* sub = table->add_subcommand(name);
        sub->add_option("--g-range", o.g_range, "A..B");
        if (std::string(name) == "t1") {
            sub->add_option("--n-range", o.n_range, "A..B");
        }
        if (std::string(name) == "t2") {
            sub->add_option("--l-range", o.l_range, "A..B");
        }
        sub->callback([&, name] {
            command = "table";
            which = name;
        });
    }

    auto* higher = app.add_subcommand("higherdim", "higher-dimensional constants")->require_subcommand(1);
    auto profile_options = [&](CLI::App* sub) {
        sub->add_option("--d", o.d)->required();
        auto* profile = sub->add_option_group("profile", "--g G or --v v1,v2,...");
        profile->add_option("--g", o.g);
        profile->add_option("--v", o.v)->delimiter(',');
        profile->require_option(1);
    };
    for (const char* name : {"nv", "bir"}) {
        auto* sub = higher->add_subcommand(name);
        profile_options(sub);
        sub->add_option("--alpha", o.alpha, "expression");
        sub->final_callback([&, name] {
            command = "higherdim";
            which = name;
        });
    }
    auto* dich = higher->add_subcommand("dichotomy")->require_subcommand(1);
    for (const char* name : {"nv", "bir"}) {
        auto* sub = dich->add_subcommand(name);
        profile_options(sub);
        sub->add_option("--l", o.l)->required();
        sub->add_option("--beta-bar", o.beta_bar, "expression")->required();
        sub->final_callback([&, name] {
            command = "dichotomy";
            which = name;
        });
    }

    auto* verify = app.add_subcommand("verify", "recompute every reference row");
    verify->add_option("--reference", o.reference, "CSV in the reference schema instead of the embedded data");
    verify->callback([&] { command = "verify"; });
    auto* eval = app.add_subcommand("eval", "certified enclosure of an expression");
    eval->add_option("expression", o.expr)->required();
    eval->add_option("--digits", o.digits, "enclosure width 10^-K")->check(CLI::Range(1, 1000));
    eval->callback([&] { command = "eval"; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << kGrammar;
        return kOk;
    } catch (const CLI::ParseError& e) {
        return usage(err, e.what());
    } catch (const Usage& e) {
        return usage(err, e.what());
    }
    try {
        (void)parse_format(o.format);
    } catch (const DomainError& e) {
        return usage(err, e.what());
    }

    try {
        Runner r(o, out);
        if (command == "threshold") {
            return r.threshold(which);
        }
        if (command == "table") {
            return r.table(which);
        }
        if (command == "higherdim") {
            return r.higherdim(which);
        }
        if (command == "dichotomy") {
            return r.dichotomy(which);
        }
        if (command == "verify") {
            return r.verify();
        }
        return r.eval();
    } catch (const Usage& e) {
        return usage(err, e.what());
    } catch (const PrecisionExhausted& e) {
        err << "pluri: precision exhausted: " << e.what() << "\n";
        return kPrecision;
    } catch (const Error& e) {
        err << "pluri: " << e.what() << "\n";
        return kDomain;
    }
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace pluri::cli
