// hbp: tables of hypergeometric Bernoulli numbers, polynomials and sums of
// products, and the identity verifier.
//
// Exit codes: 0 pass, 1 identity failure, 2 usage or configuration error.

#include <hbp/hbp.hpp>
#include <hbp/output_record.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long parse_long(std::string_view s, std::string_view what)
{
    long v = 0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw UsageError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
    }
    return v;
}

// "a..b" or a single integer "a".
hbp::IntRange parse_range(const std::string &s, std::string_view what)
{
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const long v = parse_long(s, what);
        return {v, v};
    }
    return {parse_long(std::string_view(s).substr(0, dots), what),
            parse_long(std::string_view(s).substr(dots + 2), what)};
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

hbp::Rational parse_rational_arg(const std::string &s, std::string_view what)
{
    try {
        return hbp::parse_rational(s);
    } catch (const std::exception &) {
        throw UsageError("bad rational for " + std::string(what) + ": '" + s + "'");
    }
}

std::string range_text(const hbp::IntRange &r)
{
    return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

struct Common {
    std::string format = "json";

    hbp::OutputFormat output_format() const
    {
        auto f = hbp::parse_output_format(format);
        if (!f) {
            throw UsageError("unknown format '" + format + "' (json, csv, tsv)");
        }
        return *f;
    }
};

void require(bool ok, const std::string &message)
{
    if (!ok) {
        throw UsageError(message);
    }
}

struct NumbersArgs : Common {
    long N = 1;
    long n_max = 10;
};

int cmd_numbers(const NumbersArgs &a, hbp::HBTable &table)
{
    require(a.N >= 1, "--N must be >= 1");
    require(a.n_max >= 0, "--n-max must be >= 0");
    const auto fmt = a.output_format();
    hbp::OutputRecord rec;
    rec.command = "numbers";
    rec.parameters["N"] = a.N;
    rec.parameters["n_max"] = a.n_max;
    for (long n = 0; n <= a.n_max; ++n) {
        rec.rows.push_back({{"n", n}, {"value", hbp::to_string(table.number(a.N, n))}});
    }
    hbp::write_record(std::cout, rec, fmt);
    return exit_pass;
}

struct PolyArgs : Common {
    long N = 1;
    long n = 0;
};

int cmd_poly(const PolyArgs &a, hbp::HBTable &table)
{
    require(a.N >= 1, "--N must be >= 1");
    require(a.n >= 0, "--n must be >= 0");
    const auto fmt = a.output_format();
    hbp::OutputRecord rec;
    rec.command = "poly";
    rec.parameters["N"] = a.N;
    rec.parameters["n"] = a.n;
    hbp::ordered_json coeffs = hbp::ordered_json::array();
    for (const auto &c : table.polynomial_ref(a.N, a.n).coefficients()) {
        coeffs.push_back(hbp::to_string(c));
    }
    rec.rows.push_back({{"N", a.N}, {"n", a.n}, {"coefficients", coeffs}});
    hbp::write_record(std::cout, rec, fmt);
    return exit_pass;
}

struct SumsArgs : Common {
    long N = 1;
    long p = 1;
    long n_max = 10;
    std::string z = "0";
    std::string points;
    std::string method = "recurrence";
};

int cmd_sums(const SumsArgs &a, hbp::HBTable &table)
{
    require(a.N >= 1, "--N must be >= 1");
    require(a.p >= 1, "--p must be >= 1");
    require(a.p <= hbp::default_max_p, "--p exceeds the cap " + std::to_string(hbp::default_max_p));
    require(a.n_max >= 0, "--n-max must be >= 0");
    require(a.method == "brute" || a.method == "recurrence" || a.method == "closed",
            "unknown method '" + a.method + "' (brute, recurrence, closed)");
    const auto fmt = a.output_format();

    // Brute force needs individual points; default is (z, 0, ..., 0).
    std::vector<hbp::Rational> xs;
    if (!a.points.empty()) {
        for (const auto &s : split(a.points, ',')) {
            xs.push_back(parse_rational_arg(s, "--points"));
        }
        require(static_cast<long>(xs.size()) == a.p, "--points must list exactly p values");
    } else {
        xs.assign(static_cast<std::size_t>(a.p), hbp::Rational(0));
        xs[0] = parse_rational_arg(a.z, "--z");
    }
    const hbp::PointVector pv(xs);
    const hbp::Rational z = pv.z();

    hbp::OutputRecord rec;
    rec.command = "sums";
    rec.parameters["N"] = a.N;
    rec.parameters["p"] = a.p;
    rec.parameters["n_max"] = a.n_max;
    rec.parameters["z"] = hbp::to_string(z);
    rec.parameters["method"] = a.method;

    std::vector<hbp::Rational> values;
    if (a.method == "recurrence") {
        values = hbp::sop_recurrence_row(table, a.N, a.n_max, a.p, z);
    } else {
        for (long n = 0; n <= a.n_max; ++n) {
            values.push_back(a.method == "brute" ? hbp::sop_bruteforce(table, a.N, n, pv)
                                                 : hbp::sop_closed_form(table, a.N, n, a.p, z));
        }
    }
    for (long n = 0; n <= a.n_max; ++n) {
        rec.rows.push_back({{"n", n}, {"value", hbp::to_string(values[static_cast<std::size_t>(n)])}});
    }
    hbp::write_record(std::cout, rec, fmt);
    return exit_pass;
}

struct VerifyArgs : Common {
    std::vector<std::string> ids;
    std::string N = "1..4";
    std::string M = "1..4";
    std::string n = "0..30";
    std::string p = "1..5";
    long order = 40;
    std::string seed_panel;
    bool fail_fast = false;
    unsigned jobs = 1;
    std::vector<std::string> faults;
    bool timing = false;
};

int cmd_verify(const VerifyArgs &a, hbp::HBTable &table)
{
    const auto fmt = a.output_format();
    require(!a.ids.empty(), "verify needs at least one identity id (or 'all')");
    hbp::ParamGrid grid;
    grid.N = parse_range(a.N, "--N");
    grid.M = parse_range(a.M, "--M");
    grid.n = parse_range(a.n, "--n");
    grid.p = parse_range(a.p, "--p");
    grid.order = a.order;
    require(a.order >= 0, "--order must be >= 0");
    require(grid.p.hi <= hbp::default_max_p, "--p exceeds the cap " + std::to_string(hbp::default_max_p));
    require(grid.n.hi <= table.max_n(), "--n exceeds HBP_MAX_N = " + std::to_string(table.max_n()));
    if (!a.seed_panel.empty()) {
        grid.panel.clear();
        for (const auto &s : split(a.seed_panel, ',')) {
            const hbp::Rational v = parse_rational_arg(s, "--seed-panel");
            require(std::find(grid.panel.begin(), grid.panel.end(), v) == grid.panel.end(),
                    "--seed-panel values must be distinct");
            grid.panel.push_back(v);
        }
    }
    require(!grid.panel.empty(), "panel must not be empty");

    for (const auto &f : a.faults) {
        const auto parts = split(f, ',');
        require(parts.size() == 3, "--inject-fault expects N,n,value");
        const long fN = parse_long(parts[0], "--inject-fault N");
        const long fn = parse_long(parts[1], "--inject-fault n");
        require(fN >= 1 && fn >= 0, "--inject-fault needs N >= 1 and n >= 0");
        table.inject_fault(fN, fn, parse_rational_arg(parts[2], "--inject-fault value"));
    }

    std::vector<hbp::IdentityReport> reports;
    try {
        reports = hbp::run_suite(a.ids, grid, table, {.jobs = std::max(a.jobs, 1u), .fail_fast = a.fail_fast});
    } catch (const hbp::UnknownIdentity &e) {
        throw UsageError(e.what());
    }

    hbp::OutputRecord rec;
    rec.command = "verify";
    hbp::ordered_json ids = hbp::ordered_json::array();
    for (const auto &id : a.ids) {
        ids.push_back(id);
    }
    rec.parameters["ids"] = ids;
    rec.parameters["N"] = range_text(grid.N);
    rec.parameters["M"] = range_text(grid.M);
    rec.parameters["n"] = range_text(grid.n);
    rec.parameters["p"] = range_text(grid.p);
    rec.parameters["order"] = grid.order;
    hbp::ordered_json panel = hbp::ordered_json::array();
    for (const auto &v : grid.panel) {
        panel.push_back(hbp::to_string(v));
    }
    rec.parameters["panel"] = panel;
    rec.parameters["fail_fast"] = a.fail_fast;
    if (!a.faults.empty()) {
        rec.parameters["injected_faults"] = a.faults;
    }

    bool all_pass = true;
    for (const auto &r : reports) {
        all_pass = all_pass && r.passed();
        if (fmt == hbp::OutputFormat::json) {
            rec.rows.push_back(hbp::report_to_json(r, a.timing));
        } else {
            for (auto &row : hbp::report_to_flat_rows(r, a.timing)) {
                rec.rows.push_back(std::move(row));
            }
        }
    }
    rec.status = all_pass ? "pass" : "fail";
    hbp::write_record(std::cout, rec, fmt);
    return all_pass ? exit_pass : exit_fail;
}

void add_format(CLI::App *cmd, Common &c)
{
    cmd->add_option("--format", c.format, "json, csv or tsv")->capture_default_str();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Hypergeometric Bernoulli numbers, polynomials, sums of products and identity checks"};
    app.require_subcommand(1);

    NumbersArgs numbers;
    auto *c_numbers = app.add_subcommand("numbers", "Table of B_{N,n} for 0 <= n <= n-max");
    c_numbers->add_option("--N", numbers.N, "order N >= 1")->capture_default_str();
    c_numbers->add_option("--n-max", numbers.n_max, "largest index")->capture_default_str();
    add_format(c_numbers, numbers);

    PolyArgs poly;
    auto *c_poly = app.add_subcommand("poly", "Coefficients of B_{N,n}(x), ascending");
    c_poly->add_option("--N", poly.N, "order N >= 1")->capture_default_str();
    c_poly->add_option("--n", poly.n, "degree")->capture_default_str();
    add_format(c_poly, poly);

    SumsArgs sums;
    auto *c_sums = app.add_subcommand("sums", "Sums of products S^{(p)}_{N,n} for 0 <= n <= n-max");
    c_sums->add_option("--N", sums.N, "order N >= 1")->capture_default_str();
    c_sums->add_option("--p", sums.p, "number of factors")->capture_default_str();
    c_sums->add_option("--n-max", sums.n_max, "largest index")->capture_default_str();
    c_sums->add_option("--z", sums.z, "sum of the points, p/q")->capture_default_str();
    c_sums->add_option("--points", sums.points, "comma-separated x_1..x_p (overrides --z)");
    c_sums->add_option("--method", sums.method, "brute, recurrence or closed")->capture_default_str();
    add_format(c_sums, sums);

    VerifyArgs verify;
    auto *c_verify = app.add_subcommand("verify", "Check identities exactly over a parameter grid");
    c_verify->add_option("ids", verify.ids, "identity ids, or 'all'")->required();
    c_verify->add_option("--N", verify.N, "range a..b")->capture_default_str();
    c_verify->add_option("--M", verify.M, "range a..b")->capture_default_str();
    c_verify->add_option("--n", verify.n, "range a..b")->capture_default_str();
    c_verify->add_option("--p", verify.p, "range a..b")->capture_default_str();
    c_verify->add_option("--order", verify.order, "series order")->capture_default_str();
    c_verify->add_option("--seed-panel", verify.seed_panel, "comma-separated x samples, p/q");
    c_verify->add_flag("--fail-fast", verify.fail_fast, "stop after the first failing identity");
    c_verify->add_option("--jobs", verify.jobs, "checkers run concurrently")->capture_default_str();
    c_verify->add_option("--inject-fault", verify.faults, "N,n,value: corrupt B_{N,n} (test hook)");
    c_verify->add_flag("--timing", verify.timing, "include elapsed times (output is then not reproducible)");
    add_format(c_verify, verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        hbp::HBTable table(hbp::max_n_from_env());
        if (c_numbers->parsed()) {
            return cmd_numbers(numbers, table);
        }
        if (c_poly->parsed()) {
            return cmd_poly(poly, table);
        }
        if (c_sums->parsed()) {
            return cmd_sums(sums, table);
        }
        return cmd_verify(verify, table);
    } catch (const UsageError &e) {
        std::cerr << "hbp: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::logic_error &e) {
        // domain_error, out_of_range, invalid_argument: bad parameters
        std::cerr << "hbp: " << e.what() << '\n';
        return exit_usage;
    }
}
