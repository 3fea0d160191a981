#include "ucwfp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ucwfp/error.hpp"

namespace ucwfp {

nlohmann::json Verdict::to_json() const {
    nlohmann::json j{{"monitor", monitor},
                     {"anchor", anchor},
                     {"hard", hard},
                     {"pass", pass},
                     {"vacuous", vacuous},
                     {"checked", checked},
                     {"worstMargin", vacuous ? nlohmann::json(nullptr) : nlohmann::json(worst_margin)},
                     {"tol", tol},
                     {"witness", witness}};
    j["surrogate"] = surrogate.empty() ? nlohmann::json(nullptr) : nlohmann::json(surrogate);
    return j;
}

namespace {

constexpr const char* kPremise = "d(x_n, x_{n+1}) < d(x_n, x_{n-1})";

class Track {
public:
    Track(std::string name, std::string anchor, std::string surrogate, bool hard, double tol) {
        v_.monitor = std::move(name);
        v_.anchor = std::move(anchor);
        v_.surrogate = std::move(surrogate);
        v_.hard = hard;
        v_.tol = tol;
    }

    template <class Where>
    void see(double margin, Where&& where) {
        ++v_.checked;
        if (v_.vacuous || margin < v_.worst_margin) {
            v_.vacuous = false;
            v_.worst_margin = margin;
            v_.witness = where();
        }
    }
    void note(const char* key, nlohmann::json value) { notes_[key] = std::move(value); }
    void set_hard(bool hard) { v_.hard = hard; }

    Verdict done() {
        v_.pass = v_.vacuous || v_.worst_margin >= -v_.tol;
        if (!notes_.empty()) {
            if (v_.witness.is_null()) v_.witness = nlohmann::json::object();
            v_.witness["summary"] = notes_;
        }
        return std::move(v_);
    }

private:
    Verdict v_;
    nlohmann::json notes_ = nlohmann::json::object();
};

struct Context {
    const Trajectory& traj;
    const Space& space;
    const MonitorSet& ms;
    double b;
    UTransform u;
    std::vector<Point> fixed;
    std::vector<double> grid;
    PkExtraction pk;
    std::size_t K = 0;
    std::size_t J = 0;

    // 1-based over k in [1, K]; unused slot 0.
    std::vector<const Point*> x;
    std::vector<double> gap;   // gap[k]  = d(x_k, x_{k+1}),  k in [1, K-1]
    std::vector<double> back;  // back[k] = d(x_k, x_{k-1}),  k in [2, K]
    std::vector<std::size_t> premise;

    Context(const Trajectory& t, const MonitorSet& m)
        : traj(t),
          space(t.space()),
          ms(m),
          b(t.space().diameter_bound()),
          u(u_transform(t.space().modulus())),
          fixed(m.fixed_points.empty() ? t.fixed_points() : m.fixed_points),
          grid(m.eps_grid(t.space().diameter_bound())),
          pk(extract_pk(t)) {
        K = pk.p.size();
        J = traj.rows();
        x.assign(K + 1, nullptr);
        for (std::size_t k = 1; k <= K; ++k) x[k] = &traj.y(p(k));
        gap.assign(K + 1, 0.0);
        back.assign(K + 1, 0.0);
        for (std::size_t k = 1; k < K; ++k) gap[k] = d(*x[k], *x[k + 1]);
        for (std::size_t k = 2; k <= K; ++k) back[k] = d(*x[k], *x[k - 1]);
        for (std::size_t n = 2; n < K; ++n)
            if (gap[n] < back[n]) premise.push_back(n);
    }

    std::size_t p(std::size_t k) const { return pk.p[k - 1]; }
    double d(const Point& a, const Point& c) const { return space.distance(a, c); }
    const Point* s_tail(std::size_t j) const {
        const auto& r = traj.row(j).s_tail;
        return r ? &*r : nullptr;
    }
    /// S y_j when row j+1 was built from it. Inequalities that come from the
    /// Case I test at row j say nothing about S y_J of the last row.
    const Point* used_s_tail(std::size_t j) const { return j < J ? s_tail(j) : nullptr; }
    double count_bound(double eps) const { return std::ceil((b + 1.0) / (u(b, eps / b) * b)); }
    nlohmann::json point(const Point& q) const { return space.to_json(q); }
};

Track make(const Context& c, const std::string& name, std::string anchor, std::string surrogate = {},
           bool hard = true) {
    return Track(name, std::move(anchor), std::move(surrogate), hard, c.ms.tol_for(name));
}

// -- row monitors --------------------------------------------------------------

Verdict row_fejer(const Context& c) {
    Track t = make(c, "row_fejer", "d(z[i+1,j], p) <= d(z[i,j], p) for every row j, position i and fixed point p");
    const Trajectory& tr = c.traj;
    for (std::size_t id = 1; id < tr.node_count(); ++id) {
        const Node& child = tr.node(id);
        const Node& parent = tr.node(child.parent);
        for (std::size_t f = 0; f < c.fixed.size(); ++f) {
            const double dp = c.d(parent.point, c.fixed[f]);
            const double dc = c.d(child.point, c.fixed[f]);
            t.see(dp - dc, [&] {
                return nlohmann::json{{"row", id + 1}, {"i", parent.depth}, {"fixedPoint", f},
                                      {"dParent", dp}, {"dChild", dc}};
            });
        }
    }
    return t.done();
}

Verdict row_drop(const Context& c) {
    Track t = make(c, "row_drop",
                   "d(z[i,j], z[i+1,j]) >= eps  =>  d(z[i,j], p) - d(z[i+1,j], p) >= u(b, eps/b) b");
    const Trajectory& tr = c.traj;
    for (std::size_t id = 1; id < tr.node_count(); ++id) {
        const Node& child = tr.node(id);
        const Node& parent = tr.node(child.parent);
        const double e = c.d(parent.point, child.point);
        if (e < c.grid.back()) continue;
        for (std::size_t f = 0; f < c.fixed.size(); ++f) {
            const double drop = c.d(parent.point, c.fixed[f]) - c.d(child.point, c.fixed[f]);
            for (double eps : c.grid) {
                if (e < eps) continue;
                const double need = c.u(c.b, eps / c.b) * c.b;
                t.see(drop - need, [&] {
                    return nlohmann::json{{"row", id + 1}, {"i", parent.depth}, {"fixedPoint", f}, {"eps", eps},
                                          {"edge", e}, {"drop", drop}, {"required", need}};
                });
            }
        }
    }
    return t.done();
}

// -- x-sequence monitors -------------------------------------------------------

Verdict tail_envelope(const Context& c) {
    Track t = make(c, "tail_envelope", "n >= p_k  =>  d(y_n, p) <= d(x_k, p)");
    for (std::size_t f = 0; f < c.fixed.size(); ++f) {
        // suffix[n] = max_{m >= n} d(y_m, p), with the row attaining it.
        std::vector<double> suffix(c.J + 2, -std::numeric_limits<double>::infinity());
        std::vector<std::size_t> arg(c.J + 2, 0);
        for (std::size_t n = c.J; n >= 1; --n) {
            const double v = c.d(c.traj.y(n), c.fixed[f]);
            suffix[n] = v > suffix[n + 1] ? v : suffix[n + 1];
            arg[n] = v > suffix[n + 1] ? n : arg[n + 1];
        }
        for (std::size_t k = 1; k <= c.K; ++k) {
            const double dx = c.d(*c.x[k], c.fixed[f]);
            const std::size_t pk = c.p(k);
            t.see(dx - suffix[pk], [&] {
                return nlohmann::json{{"k", k}, {"p_k", pk}, {"n", arg[pk]}, {"fixedPoint", f},
                                      {"d(x_k,p)", dx}, {"d(y_n,p)", suffix[pk]}};
            });
        }
    }
    return t.done();
}

Verdict x_drop(const Context& c) {
    Track t = make(c, "x_drop", "d(x_k, x_{k+1}) >= eps  =>  d(x_k, p) - d(x_{k+1}, p) >= u(b, eps/b) b");
    for (std::size_t k = 1; k < c.K; ++k) {
        if (c.gap[k] < c.grid.back()) continue;
        for (std::size_t f = 0; f < c.fixed.size(); ++f) {
            const double drop = c.d(*c.x[k], c.fixed[f]) - c.d(*c.x[k + 1], c.fixed[f]);
            for (double eps : c.grid) {
                if (c.gap[k] < eps) continue;
                const double need = c.u(c.b, eps / c.b) * c.b;
                t.see(drop - need, [&] {
                    return nlohmann::json{{"k", k}, {"fixedPoint", f}, {"eps", eps}, {"gap", c.gap[k]},
                                          {"drop", drop}, {"required", need}};
                });
            }
        }
    }
    return t.done();
}

Verdict x_gap_count(const Context& c) {
    Track t = make(c, "x_gap_count", "d(x_k, x_{k+1}) -> 0",
                   "#{k : d(x_k, x_{k+1}) >= eps} <= ceil((b+1) / (u(b, eps/b) b)) for eps = b 2^-t");
    if (c.K < 2) return t.done();
    nlohmann::json levels = nlohmann::json::array();
    for (double eps : c.grid) {
        std::size_t count = 0;
        for (std::size_t k = 1; k < c.K; ++k)
            if (c.gap[k] >= eps) ++count;
        const double bound = c.count_bound(eps);
        levels.push_back({{"eps", eps}, {"count", count}, {"bound", bound}});
        t.see(bound - static_cast<double>(count),
              [&] { return nlohmann::json{{"eps", eps}, {"count", count}, {"bound", bound}}; });
    }
    t.note("levels", levels);
    return t.done();
}

Verdict x_residual_link(const Context& c) {
    Track t = make(c, "x_residual_link", "2 d(x_k, x_{k+1}) >= d(x_k, S x_k)");
    for (std::size_t k = 1; k < c.K; ++k) {
        const Point* sx = c.s_tail(c.p(k));
        if (sx == nullptr) continue;
        const double r = c.d(*c.x[k], *sx);
        t.see(2.0 * c.gap[k] - r, [&] {
            return nlohmann::json{{"k", k}, {"p_k", c.p(k)}, {"gap", c.gap[k]}, {"residual", r}};
        });
    }
    return t.done();
}

Verdict stabilization(const Context& c) {
    Track t = make(c, "stabilization",
                   "x_n = x_{n+1} = x_{n+2}  =>  S x_n = x_n, y_j = x_n for j >= p_{n+2}, x_q = x_n for q >= n");
    for (std::size_t n = 1; n + 2 <= c.K; ++n) {
        if (!(*c.x[n] == *c.x[n + 1] && *c.x[n + 1] == *c.x[n + 2])) continue;
        const Point& xn = *c.x[n];
        if (const Point* s = c.s_tail(c.p(n))) {
            const double r = c.d(xn, *s);
            t.see(-r, [&] { return nlohmann::json{{"n", n}, {"claim", "S x_n = x_n"}, {"d(x_n,S x_n)", r}}; });
        }
        for (std::size_t j = c.p(n + 2); j <= c.J; ++j) {
            const double v = c.d(c.traj.y(j), xn);
            t.see(-v, [&] { return nlohmann::json{{"n", n}, {"claim", "y_j = x_n"}, {"j", j}, {"d(y_j,x_n)", v}}; });
        }
        for (std::size_t q = n; q <= c.K; ++q) {
            const double v = c.d(*c.x[q], xn);
            t.see(-v, [&] { return nlohmann::json{{"n", n}, {"claim", "x_q = x_n"}, {"q", q}, {"d(x_q,x_n)", v}}; });
        }
        break;
    }
    return t.done();
}

Verdict spread_x(const Context& c) {
    Track t = make(c, "spread_x", std::string(kPremise) + "  =>  d(x_n, x_q) <= 2 d(x_n, x_{n-1}) for q >= n");
    for (std::size_t n : c.premise) {
        const double bound = 2.0 * c.back[n];
        for (std::size_t q = n; q <= c.K; ++q) {
            const double v = c.d(*c.x[n], *c.x[q]);
            t.see(bound - v, [&] { return nlohmann::json{{"n", n}, {"q", q}, {"bound", bound}, {"distance", v}}; });
        }
    }
    return t.done();
}

Verdict spread_s_x(const Context& c) {
    Track t = make(c, "spread_s_x",
                   std::string(kPremise) + "  =>  d(x_n, S x_q) <= 2 d(x_n, x_{n-1}) for q >= n+1, p_q < J");
    for (std::size_t n : c.premise) {
        const double bound = 2.0 * c.back[n];
        for (std::size_t q = n + 1; q <= c.K; ++q) {
            const Point* s = c.used_s_tail(c.p(q));
            if (s == nullptr) continue;
            const double v = c.d(*c.x[n], *s);
            t.see(bound - v, [&] { return nlohmann::json{{"n", n}, {"q", q}, {"bound", bound}, {"distance", v}}; });
        }
    }
    return t.done();
}

Verdict x_residual_decay(const Context& c) {
    Track t = make(c, "x_residual_decay", "d(x_k, S x_k) -> 0",
                   "#{k : d(x_k, S x_k) >= 2 eps} <= ceil((b+1) / (u(b, eps/b) b)); and " + std::string(kPremise) +
                       "  =>  d(x_q, S x_q) <= 4 d(x_n, x_{n-1}) for q >= n+1, p_q < J");
    std::vector<double> res(c.K + 2, -std::numeric_limits<double>::infinity());
    std::vector<bool> known(c.K + 2, false);
    std::vector<double> used(c.K + 2, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 1; k <= c.K; ++k) {
        if (const Point* s = c.s_tail(c.p(k))) {
            res[k] = c.d(*c.x[k], *s);
            known[k] = true;
            if (c.used_s_tail(c.p(k)) != nullptr) used[k] = res[k];
        }
    }
    if (c.K >= 2) {
        for (double eps : c.grid) {
            std::size_t count = 0;
            for (std::size_t k = 1; k < c.K; ++k)
                if (known[k] && res[k] >= 2.0 * eps) ++count;
            const double bound = c.count_bound(eps);
            t.see(bound - static_cast<double>(count),
                  [&] { return nlohmann::json{{"eps", eps}, {"count", count}, {"bound", bound}}; });
        }
    }
    // suffix maximum of the residuals over q >= n+1
    std::vector<double> suffix(c.K + 2, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> arg(c.K + 2, 0);
    for (std::size_t q = c.K; q >= 1; --q) {
        suffix[q] = used[q] > suffix[q + 1] ? used[q] : suffix[q + 1];
        arg[q] = used[q] > suffix[q + 1] ? q : arg[q + 1];
    }
    for (std::size_t n : c.premise) {
        if (arg[n + 1] == 0) continue;
        const double bound = 4.0 * c.back[n];
        t.see(bound - suffix[n + 1], [&] {
            return nlohmann::json{{"n", n}, {"q", arg[n + 1]}, {"bound", bound}, {"residual", suffix[n + 1]}};
        });
    }
    return t.done();
}

// -- y-sequence monitors -------------------------------------------------------

/// spread_s_tail, spread_y and the first half of y_residual_decay share the
/// range u in [p_{n+1}, J].
void y_spreads(const Context& c, Track& s_tail, Track& y_spread, Track& y_res, bool want_s, bool want_y,
               bool want_r) {
    std::vector<double> res(c.J + 2, -std::numeric_limits<double>::infinity());
    for (std::size_t j = 1; j <= c.J; ++j)
        if (const Point* s = c.used_s_tail(j)) res[j] = c.d(c.traj.y(j), *s);
    std::vector<double> suffix(c.J + 2, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> arg(c.J + 2, 0);
    for (std::size_t j = c.J; j >= 1; --j) {
        suffix[j] = res[j] > suffix[j + 1] ? res[j] : suffix[j + 1];
        arg[j] = res[j] > suffix[j + 1] ? j : arg[j + 1];
    }

    for (std::size_t n : c.premise) {
        const Point& xn = *c.x[n];
        const double bound = 2.0 * c.back[n];
        const std::size_t from = c.p(n + 1);
        if (want_s || want_y) {
            for (std::size_t uu = from; uu <= c.J; ++uu) {
                if (want_y) {
                    const double v = c.d(xn, c.traj.y(uu));
                    y_spread.see(bound - v, [&] {
                        return nlohmann::json{{"n", n}, {"u", uu}, {"bound", bound}, {"distance", v}};
                    });
                }
                if (want_s) {
                    if (const Point* s = c.used_s_tail(uu)) {
                        const double v = c.d(xn, *s);
                        s_tail.see(bound - v, [&] {
                            return nlohmann::json{{"n", n}, {"u", uu}, {"bound", bound}, {"distance", v}};
                        });
                    }
                }
            }
        }
        if (want_r && arg[from] != 0) {
            const double rb = 4.0 * c.back[n];
            y_res.see(rb - suffix[from], [&] {
                return nlohmann::json{{"n", n}, {"u", arg[from]}, {"bound", rb}, {"residual", suffix[from]}};
            });
        }
    }

    if (want_r) {
        const auto& rule = c.traj.stop_rule();
        const auto& last = c.traj.row(c.J);
        if (c.traj.stop_reason() == StopReason::residual && rule && rule->residual_tol && last.residual) {
            const double tol = *rule->residual_tol;
            y_res.see(tol - *last.residual, [&] {
                return nlohmann::json{{"claim", "residual at stop"}, {"row", c.J}, {"residual", *last.residual},
                                      {"residualTol", tol}};
            });
        }
    }
}

Verdict y_limit_envelope(const Context& c) {
    const bool known = !c.fixed.empty();
    Track t = make(c, "y_limit_envelope", "y_n -> p",
                   known ? "d(x_k, p) <= eps  =>  d(y_n, p) <= eps for all n >= p_k, eps = b 2^-t"
                         : "n >= p_k  =>  d(y_n, y_J) <= d(x_k, y_J) + 2 d(y_J, S y_J) (final iterate as proxy)",
                   known);
    if (known) {
        for (std::size_t f = 0; f < c.fixed.size(); ++f) {
            std::vector<double> suffix(c.J + 2, -std::numeric_limits<double>::infinity());
            for (std::size_t n = c.J; n >= 1; --n)
                suffix[n] = std::max(suffix[n + 1], c.d(c.traj.y(n), c.fixed[f]));
            std::size_t k = 1;
            for (double eps : c.grid) {
                while (k <= c.K && c.d(*c.x[k], c.fixed[f]) > eps) ++k;
                if (k > c.K) break;
                const std::size_t from = c.p(k);
                t.see(eps - suffix[from], [&] {
                    return nlohmann::json{{"eps", eps}, {"k", k}, {"p_k", from}, {"fixedPoint", f},
                                          {"maxDistance", suffix[from]}};
                });
            }
        }
        return t.done();
    }
    const Point& last = c.traj.y(c.J);
    const double slack = c.traj.row(c.J).residual.value_or(0.0) * 2.0;
    std::vector<double> suffix(c.J + 2, -std::numeric_limits<double>::infinity());
    for (std::size_t n = c.J; n >= 1; --n) suffix[n] = std::max(suffix[n + 1], c.d(c.traj.y(n), last));
    for (std::size_t k = 1; k <= c.K; ++k) {
        const double dx = c.d(*c.x[k], last);
        t.see(dx + slack - suffix[c.p(k)], [&] {
            return nlohmann::json{{"k", k}, {"p_k", c.p(k)}, {"d(x_k,y_J)", dx}, {"maxDistance", suffix[c.p(k)]}};
        });
    }
    return t.done();
}

double diameter(const Context& c, const std::vector<const Point*>& pts) {
    double diam = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t e = a + 1; e < pts.size(); ++e) diam = std::max(diam, c.d(*pts[a], *pts[e]));
    return diam;
}

Verdict cauchy_window(const Context& c, const std::string& name, const std::vector<const Point*>& seq,
                      const std::string& what) {
    Track t = make(c, name, "(" + what + ") is Cauchy",
                   "diameter of the last W recorded " + what +
                       " <= diameter of the W before them, W = 2, 4, 8, ... up to cauchyWindow",
                   false);
    nlohmann::json windows = nlohmann::json::array();
    const std::size_t n = seq.size();
    for (std::size_t w = 2; w <= c.ms.cauchy_window && 2 * w <= n; w *= 2) {
        const auto end = seq.end();
        const std::vector<const Point*> last(end - static_cast<std::ptrdiff_t>(w), end);
        const std::vector<const Point*> prev(end - static_cast<std::ptrdiff_t>(2 * w),
                                             end - static_cast<std::ptrdiff_t>(w));
        const double dl = diameter(c, last);
        const double dp = diameter(c, prev);
        windows.push_back({{"W", w}, {"last", dl}, {"previous", dp}});
        t.see(dp - dl, [&] { return nlohmann::json{{"W", w}, {"last", dl}, {"previous", dp}}; });
    }
    t.note("windows", windows);
    return t.done();
}

} // namespace

std::vector<Verdict> check_trajectory(const Trajectory& traj, const MonitorSet& monitors) {
    monitors.validate();
    const Context c(traj, monitors);
    std::vector<Verdict> out;
    auto on = [&](const char* n) { return monitors.is_enabled(n); };

    Track s_tail = make(c, "spread_s_tail",
                        std::string(kPremise) + "  =>  d(x_n, S y_u) <= 2 d(x_n, x_{n-1}) for p_{n+1} <= u < J");
    Track y_spread = make(c, "spread_y",
                          std::string(kPremise) + "  =>  d(x_n, y_u) <= 2 d(x_n, x_{n-1}) for u >= p_{n+1}");
    Track y_res = make(c, "y_residual_decay", "d(y_n, S y_n) -> 0",
                       std::string(kPremise) +
                           "  =>  d(y_u, S y_u) <= 4 d(x_n, x_{n-1}) for p_{n+1} <= u < J; d(y_J, S y_J) <= residualTol "
                           "when the run stopped on the residual rule");
    y_spreads(c, s_tail, y_spread, y_res, on("spread_s_tail"), on("spread_y"), on("y_residual_decay"));

    std::vector<const Point*> xs(c.x.begin() + 1, c.x.end());
    std::vector<const Point*> ys;
    const std::size_t ywin = std::min(c.J, 2 * monitors.cauchy_window);
    for (std::size_t j = c.J - ywin + 1; j <= c.J; ++j) ys.push_back(&traj.y(j));

    for (const auto& name : monitor_names()) {
        if (!monitors.is_enabled(name)) continue;
        if (name == "row_fejer") out.push_back(row_fejer(c));
        else if (name == "row_drop") out.push_back(row_drop(c));
        else if (name == "tail_envelope") out.push_back(tail_envelope(c));
        else if (name == "x_drop") out.push_back(x_drop(c));
        else if (name == "x_gap_count") out.push_back(x_gap_count(c));
        else if (name == "stabilization") out.push_back(stabilization(c));
        else if (name == "spread_s_tail") out.push_back(s_tail.done());
        else if (name == "spread_x") out.push_back(spread_x(c));
        else if (name == "x_cauchy_window") out.push_back(cauchy_window(c, name, xs, "x_k"));
        else if (name == "spread_s_x") out.push_back(spread_s_x(c));
        else if (name == "x_residual_decay") out.push_back(x_residual_decay(c));
        else if (name == "y_limit_envelope") out.push_back(y_limit_envelope(c));
        else if (name == "spread_y") out.push_back(y_spread.done());
        else if (name == "y_cauchy_window") out.push_back(cauchy_window(c, name, ys, "y_n"));
        else if (name == "y_residual_decay") out.push_back(y_res.done());
        else if (name == "x_residual_link") out.push_back(x_residual_link(c));
    }
    return out;
}

bool hard_monitors_pass(const std::vector<Verdict>& verdicts) {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.hard || v.pass; });
}

const Verdict& find_verdict(const std::vector<Verdict>& verdicts, const std::string& monitor) {
    for (const auto& v : verdicts)
        if (v.monitor == monitor) return v;
    throw UsageError("no verdict for monitor '" + monitor + "'");
}

nlohmann::json verdicts_to_json(const std::vector<Verdict>& verdicts) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : verdicts) list.push_back(v.to_json());
    return list;
}

std::string verdict_table(const std::vector<Verdict>& verdicts) {
    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof line, "%-18s %-8s %-5s %-10s %14s  %s\n", "monitor", "result", "kind", "checked",
                  "worst margin", "anchor");
    os << line;
    for (const auto& v : verdicts) {
        const char* result = v.vacuous ? "vacuous" : (v.pass ? "PASS" : "FAIL");
        char margin[32];
        if (v.vacuous)
            std::snprintf(margin, sizeof margin, "-");
        else
            std::snprintf(margin, sizeof margin, "%.6e", v.worst_margin);
        std::snprintf(line, sizeof line, "%-18s %-8s %-5s %-10llu %14s  %s\n", v.monitor.c_str(), result,
                      v.hard ? "hard" : "soft", static_cast<unsigned long long>(v.checked), margin, v.anchor.c_str());
        os << line;
    }
    return os.str();
}

} // namespace ucwfp
