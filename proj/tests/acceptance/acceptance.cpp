// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Scenario configs are read from UCWFP_SCENARIO_DIR.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "ucwfp/axioms.hpp"
#include "ucwfp/random.hpp"
#include "ucwfp/replay.hpp"

using namespace ucwfp;
namespace fs = std::filesystem;

namespace {

constexpr double kAxiomTrials = 1e4;
constexpr std::size_t kDropSamples = 10000;
constexpr double kDropTol = 1e-9;
constexpr std::uint64_t kSTrials = 1000;
constexpr double kSTol = 1e-10;
constexpr std::size_t kOracleRows = 1000;
constexpr std::uint64_t kGoebelKirkRows = 1000;
constexpr double kConvergenceTol = 1e-6;
constexpr double kSecondsPerSpace = 10.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
    std::printf("%s  [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

void note(const std::string& line) {
    std::printf("      %s\n", line.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

const std::vector<nlohmann::json>& bundled_spaces() {
    static const std::vector<nlohmann::json> spaces{
        {{"model", "euclidean"}, {"n", 2}, {"R", 1}},
        {{"model", "sparse-l2"}, {"n", 8}},
        {{"model", "hyperboloid"}, {"rho", 1}},
        {{"model", "startree"}, {"k", 3}, {"L", 1}},
    };
    return spaces;
}

cli::ExperimentConfig load(const std::string& stem) {
    const fs::path path = fs::path(UCWFP_SCENARIO_DIR) / (stem + ".json");
    return cli::ExperimentConfig::from_json(cli::read_json(path.string()), stem);
}

struct Built {
    SpacePtr space;
    MapPtr map;
    std::shared_ptr<SOperator> op;
    Point start;
    MonitorSet monitors;
};

Built build(const cli::ExperimentConfig& c) {
    Built b;
    b.space = make_space(c.space);
    b.map = make_map(b.space, c.map);
    SOptions opt;
    opt.mode = c.s_mode;
    opt.fix_tol = c.fix_tol;
    b.op = std::make_shared<SOperator>(b.space, b.map, opt);
    b.monitors = c.monitors;
    if (b.monitors.fixed_points.empty()) b.monitors.fixed_points = b.map->known_fixed_points();
    // Same start resolution as the runner.
    if (c.start.contains("point")) b.start = b.space->from_json(c.start["point"]);
    else if (c.start.contains("sample")) b.start = b.space->sample(c.start["sample"].get<std::uint64_t>());
    else b.start = b.space->sample(mix_seed(c.seed, 0));
    return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// -- criteria -----------------------------------------------------------------

Outcome axiom_suite() {
    Outcome o;
    double worst_time = 0.0;
    for (const auto& cfg : bundled_spaces()) {
        const SpacePtr space = make_space(cfg);
        const double tol = cli::default_axiom_tol(*space);
        const auto t0 = std::chrono::steady_clock::now();
        const AxiomReport r = check_axioms(*space, static_cast<std::uint64_t>(kAxiomTrials), 1, tol);
        const double secs = seconds_since(t0);
        worst_time = std::max(worst_time, secs);
        const bool ok = r.max_violation() <= tol && r.pass() && secs < kSecondsPerSpace;
        std::string worst_axiom;
        double worst = -INFINITY;
        for (const auto& c : r.checks)
            if (c.max_violation > worst) {
                worst = c.max_violation;
                worst_axiom = c.axiom;
            }
        note(fmt("%-12s max violation %.3e (%s) tol %.0e, %.2f s", std::string(space->model()).c_str(),
                 r.max_violation(), worst_axiom.c_str(), tol, secs));
        o.pass = o.pass && ok;
    }
    o.detail = fmt("4 spaces x %.0f trials, slowest %.2f s (limit %.0f s)", kAxiomTrials, worst_time, kSecondsPerSpace);
    return o;
}

Outcome midpoint_drop() {
    Outcome o;
    double overall = INFINITY;
    for (const auto& cfg : bundled_spaces()) {
        const SpacePtr space = make_space(cfg);
        const UTransform u = u_transform(space->modulus());
        Rng rng(mix_seed(2, 0));
        std::size_t used = 0;
        double worst = INFINITY;
        for (std::uint64_t t = 0; used < kDropSamples; ++t) {
            Point x = space->sample(mix_seed(2, 3 * t + 1));
            Point y = space->sample(mix_seed(2, 3 * t + 2));
            const Point a = space->sample(mix_seed(2, 3 * t + 3));
            if (space->distance(x, a) > space->distance(y, a)) std::swap(x, y);
            const double dxa = space->distance(x, a);
            const double dya = space->distance(y, a);
            const double dxy = space->distance(x, y);
            const double r = dya * (1.0 + rng.uniform());
            if (!(r > 0.0) || !(dxy > 0.0)) continue;
            const double eps = std::min(2.0, dxy / r) * (1.0 - rng.uniform());
            if (!(dxa <= dya && dya <= r && dxy >= eps * r && eps > 0.0)) continue;
            const double dma = space->distance(space->midpoint(x, y), a);
            worst = std::min(worst, (dya - u(r, eps) * r) - dma);
            ++used;
        }
        note(fmt("%-12s %zu premise samples, worst margin %.3e", std::string(space->model()).c_str(), used, worst));
        overall = std::min(overall, worst);
        o.pass = o.pass && worst >= -kDropTol;
    }
    o.detail = fmt("d(mid(x,y),a) <= d(y,a) - u(r,eps) r, worst margin %.3e (need >= %.0e)", overall, -kDropTol);
    return o;
}

Outcome s_operator_goebel_kirk() {
    const Built b = build(load("goebel_kirk"));
    const SPropertyReport r = check_s_properties(*b.op, kSTrials, 3, 0, kSTol);
    const auto& disp = r.at("displacement");
    const auto& quasi = r.at("quasi_nonexpansive");
    const Point zero = b.map->known_fixed_points().at(0);
    const bool exact = b.op->apply(zero).point == zero && r.at("fixed_point_exact").pass();
    Outcome o;
    o.pass = b.op->k1() == 1.0 && disp.checked >= kSTrials && disp.worst_margin >= -kSTol &&
             quasi.worst_margin >= -kSTol && exact;
    o.detail = fmt("k_1 = %g, %llu points, displacement margin %.3e, quasi-nonexpansive margin %.3e, S0 == 0 %s",
                   b.op->k1(), static_cast<unsigned long long>(disp.checked), disp.worst_margin, quasi.worst_margin,
                   exact ? "exactly" : "NO");
    return o;
}

Outcome engine_oracle() {
    Outcome o;
    std::size_t total = 0;
    for (const char* stem : {"rotation", "contraction_hyperboloid", "goebel_kirk", "tree_fold"}) {
        const Built b = build(load(stem));
        StopRule stop;
        stop.max_rows = kOracleRows - 1;
        const Trajectory engine = run(*b.op, b.start, stop, b.monitors);
        const ReplayTrajectory replay = replay_oracle(*b.op, b.start, kOracleRows);
        const ReplayComparison cmp = compare_with_oracle(engine, replay);
        bool tags = engine.rows() == replay.rows.size();
        for (std::size_t j = 1; tags && j <= engine.rows(); ++j)
            tags = engine.row(j).tag == replay.rows[j - 1].tag && engine.m(j) == replay.rows[j - 1].z.size();
        note(fmt("%-24s %zu rows, tags and m_j %s, max point gap %.3e (tol %.0e)%s", stem, cmp.rows_compared,
                 tags ? "identical" : "DIFFER", cmp.max_point_gap, cmp.point_tol,
                 cmp.ok() ? "" : (" first divergence: " + cmp.to_json()["firstDivergence"].dump()).c_str()));
        total += cmp.rows_compared;
        o.pass = o.pass && tags && cmp.ok() && cmp.rows_compared == kOracleRows;
    }
    o.detail = fmt("4 scenarios, %zu rows compared, %s", total, o.pass ? "zero divergences" : "divergence found");
    return o;
}

Outcome monitor_suite() {
    Outcome o;
    for (const char* stem : {"rotation", "contraction_hyperboloid", "goebel_kirk", "tree_fold"}) {
        const Built b = build(load(stem));
        StopRule stop = StopRule::defaults(b.space->diameter_bound());
        if (std::string(stem) == "goebel_kirk") stop.max_rows = kGoebelKirkRows - 1;
        const Trajectory t = run(*b.op, b.start, stop, b.monitors);
        const auto verdicts = check_trajectory(t, b.monitors);
        std::vector<std::string> failed;
        double worst = INFINITY;
        for (const auto& v : verdicts) {
            if (!v.hard) continue;
            if (!v.pass) failed.push_back(v.monitor);
            if (!v.vacuous) worst = std::min(worst, v.worst_margin);
        }
        std::string names;
        for (const auto& f : failed) names += " " + f;
        note(fmt("%-24s stop=%s rows=%zu, worst hard margin %.3e, hard failures:%s", stem,
                 to_string(t.stop_reason()).c_str(), t.rows(), worst, failed.empty() ? " none" : names.c_str()));
        o.pass = o.pass && failed.empty();
    }
    o.detail = "every hard monitor verdict on 4 scenarios (goebel_kirk capped at 1e3 rows)";
    return o;
}

Outcome convergence() {
    Outcome o;
    for (const char* stem : {"contraction_hyperboloid", "contraction_euclidean"}) {
        const Built b = build(load(stem));
        const Trajectory t = run(*b.op, b.start, StopRule::defaults(b.space->diameter_bound()), b.monitors);
        const double dq = oracle::distance(t.y(t.rows()), b.map->known_fixed_points().at(0));
        note(fmt("%-24s rows=%zu d(y,q) = %.3e (need <= %.0e)", stem, t.rows(), dq, kConvergenceTol));
        o.pass = o.pass && dq <= kConvergenceTol;
    }
    const Built b = build(load("rotation"));
    const Trajectory t = run(*b.op, b.start, StopRule::defaults(b.space->diameter_bound()), b.monitors);
    const auto& last = t.row(t.rows());
    const double res = last.residual.value_or(INFINITY);
    const double d0 = oracle::distance(t.y(t.rows()), b.space->anchor());
    note(fmt("%-24s rows=%zu residual %.3e (need <= %.0e), d(y,0) = %.3e (need <= %.3e)", "rotation", t.rows(), res,
             kConvergenceTol, d0, 10.0 * res));
    o.pass = o.pass && res <= kConvergenceTol && d0 <= 10.0 * res;
    o.detail = "contraction d(y,q) and rotation residual within 1e5 rows";
    return o;
}

Outcome degenerate_starts(const fs::path& out_dir) {
    Outcome o;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(UCWFP_SCENARIO_DIR))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        nlohmann::json doc = cli::read_json(f.string());
        doc["start"] = {{"fixedPoint", 0}};
        doc["output"] = {{"dir", out_dir.string()}};
        const auto cfg = cli::ExperimentConfig::from_json(doc, f.stem().string());
        const auto res = cli::run_experiment(cfg);
        const std::size_t rows = res.summary["rows"].get<std::size_t>();
        note(fmt("%-24s rows=%zu stop=%s exit=%d", cfg.name.c_str(), rows,
                 res.summary["stopReason"].get<std::string>().c_str(), res.exit_code));
        o.pass = o.pass && rows <= 2 && res.exit_code == cli::exit_ok;
    }
    o.detail = fmt("%zu bundled scenarios started at their fixed point: <= 2 rows, exit 0", files.size());
    return o;
}

Outcome corruption() {
    Outcome o;
    std::size_t failed = 0;
    const auto all = fixtures::acceptance_fixtures();
    for (const auto& f : all) {
        const Verdict v = fixtures::evaluate(f);
        const bool caught = !v.pass && v.monitor == f.monitor && !v.witness.is_null();
        if (caught) ++failed;
        note(fmt("%-16s %s, margin %.3e (%s)", f.monitor.c_str(), caught ? "fails as expected" : "NOT CAUGHT",
                 v.worst_margin, f.description.c_str()));
    }
    o.pass = failed == all.size() && all.size() == 8;
    o.detail = fmt("%zu fixtures, %zu expected failures observed", all.size(), failed);
    return o;
}

} // namespace

int main() {
    const fs::path out_dir = fs::temp_directory_path() / "ucwfp-acceptance";
    const auto t0 = std::chrono::steady_clock::now();
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "axiom suite", axiom_suite},
        {2, "midpoint drop", midpoint_drop},
        {3, "S operator on goebelKirk", s_operator_goebel_kirk},
        {4, "engine vs replay oracle", engine_oracle},
        {5, "monitor suite", monitor_suite},
        {6, "convergence", convergence},
        {7, "fixed point starts", [&] { return degenerate_starts(out_dir); }},
        {8, "corruption sensitivity", corruption},
    };
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(c.id, c.title, o);
    }
    std::printf("%d of %zu criteria failed (%.1f s)\n", failures, criteria.size(), seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
