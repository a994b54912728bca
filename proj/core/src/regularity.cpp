#include "regc/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "regc/errors.hpp"
#include "regc/rng.hpp"

namespace regc {

Certificate::Certificate(VertexSet x_, VertexSet y_, double deviation_, double level_)
    : x(std::move(x_)), y(std::move(y_)), deviation(deviation_), level(level_) {
    if (x.empty() || y.empty()) {
        throw InvalidArgument("Certificate: witness sets must be nonempty");
    }
    if (!(deviation >= level)) {
        throw InvalidArgument("Certificate: deviation below witnessed level");
    }
}

std::string to_string(CheckerKind kind) {
    switch (kind) {
        case CheckerKind::alon: return "alon";
        case CheckerKind::fk: return "fk";
        case CheckerKind::exhaustive: return "exhaustive";
    }
    return "alon";
}

CheckerKind checker_from_string(const std::string& s) {
    if (s == "alon") return CheckerKind::alon;
    if (s == "fk") return CheckerKind::fk;
    if (s == "exhaustive") return CheckerKind::exhaustive;
    throw InvalidArgument("unknown checker: " + s);
}

namespace {

void require_pair(const AffinityGraph& g, const VertexSet& vs, const VertexSet& vt,
                  double eps, const char* op) {
    if (vs.empty() || vt.empty()) {
        throw InvalidArgument(std::string(op) + ": classes must be nonempty");
    }
    if (!vs.valid_for(g.size()) || !vt.valid_for(g.size())) {
        throw InvalidArgument(std::string(op) + ": vertex id out of range");
    }
    if (!vs.disjoint_from(vt)) {
        throw InvalidArgument(std::string(op) + ": classes must be disjoint");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InvalidArgument(std::string(op) + ": eps must be in (0,1)");
    }
}

struct Candidate {
    std::vector<int> x;  // graph vertex ids, subset of vs
    std::vector<int> y;  // graph vertex ids, subset of vt
};

/// Re-derives the deviation of a candidate from the graph and accepts it only
/// if the size and level bounds hold. This makes the checker's contract
/// independent of how the candidate was constructed.
std::optional<Certificate> validate_candidate(const AffinityGraph& g,
                                              const Candidate& cand, double pair_density,
                                              int min_x, int min_y, double level) {
    if (static_cast<int>(cand.x.size()) < min_x) return std::nullopt;
    if (static_cast<int>(cand.y.size()) < min_y) return std::nullopt;
    VertexSet x(cand.x);
    VertexSet y(cand.y);
    const double dev = std::abs(density(g, x, y) - pair_density);
    if (dev < level) return std::nullopt;
    return Certificate(std::move(x), std::move(y), dev, level);
}

PairVerdict regular_verdict(CheckerKind kind) {
    PairVerdict v;
    v.regular = true;
    v.checker = kind;
    return v;
}

PairVerdict irregular_verdict(CheckerKind kind, Certificate cert) {
    PairVerdict v;
    v.regular = false;
    v.certificate = std::move(cert);
    v.checker = kind;
    return v;
}

}  // namespace

PairVerdict check_pair_alon(const AffinityGraph& g, const VertexSet& vs,
                            const VertexSet& vt, double eps) {
    require_pair(g, vs, vt, eps, "check_pair_alon");
    if (vs.size() != vt.size()) {
        throw InvalidArgument("check_pair_alon: classes must have equal size");
    }
    const int n = vs.size();
    const double nn = static_cast<double>(n);
    const double eps3 = eps * eps * eps;
    const double eps4 = eps3 * eps;
    const double level = eps4;
    const int min_size = static_cast<int>(std::ceil(eps4 / 16.0 * nn));
    const double d = density(g, vs, vt);

    // Step 1: sparse pairs are regular outright.
    if (d < eps3) return regular_verdict(CheckerKind::alon);

    // Weighted degrees of vt vertices into vs.
    const Eigen::MatrixXd block = g.block(vs, vt);  // n x n, rows = vs
    const Eigen::VectorXd deg = block.colwise().sum();
    Eigen::VectorXd deg_dev = deg.array() - d * nn;

    std::vector<Candidate> candidates;

    // Step 2: degree-deviation scan.
    std::vector<int> above, below;
    for (int j = 0; j < n; ++j) {
        if (deg_dev(j) >= eps4 * nn) above.push_back(vt[static_cast<std::size_t>(j)]);
        else if (deg_dev(j) <= -eps4 * nn) below.push_back(vt[static_cast<std::size_t>(j)]);
    }
    const double deviator_count = static_cast<double>(above.size() + below.size());
    if (deviator_count > eps4 / 8.0 * nn) {
        Candidate cand;
        cand.x = vs.ids();
        cand.y = above.size() >= below.size() ? above : below;
        candidates.push_back(std::move(cand));
    } else {
        // Step 3: co-neighborhood deviation. codev(y,y') counts common
        // (weighted) neighbors in vs against the d^2 n expectation.
        Eigen::MatrixXd codev = block.transpose() * block;
        codev.array() -= d * d * nn;

        // Pivot: a degree-typical vertex with the largest summed deviation.
        int pivot = -1;
        double best_score = -1.0;
        for (int j = 0; j < n; ++j) {
            if (std::abs(deg_dev(j)) >= eps4 * nn) continue;
            double score = codev.col(j).cwiseAbs().sum() - std::abs(codev(j, j));
            if (score > best_score) {
                best_score = score;
                pivot = j;
            }
        }
        if (pivot >= 0) {
            Candidate plus, minus;
            for (int i = 0; i < n; ++i) {
                if (block(i, pivot) >= d) {
                    const int id = vs[static_cast<std::size_t>(i)];
                    plus.x.push_back(id);
                    minus.x.push_back(id);
                }
            }
            const double partner_level = 2.0 * eps4 * nn;
            for (int j = 0; j < n; ++j) {
                if (j == pivot) continue;
                if (codev(j, pivot) >= partner_level) {
                    plus.y.push_back(vt[static_cast<std::size_t>(j)]);
                } else if (codev(j, pivot) <= -partner_level) {
                    minus.y.push_back(vt[static_cast<std::size_t>(j)]);
                }
            }
            candidates.push_back(std::move(plus));
            candidates.push_back(std::move(minus));
        }
    }

    std::optional<Certificate> best;
    for (const auto& cand : candidates) {
        if (cand.x.empty() || cand.y.empty()) continue;
        auto cert = validate_candidate(g, cand, d, min_size, min_size, level);
        if (cert && (!best || cert->deviation > best->deviation)) {
            best = std::move(cert);
        }
    }
    if (best) return irregular_verdict(CheckerKind::alon, std::move(*best));
    return regular_verdict(CheckerKind::alon);
}

SingularTriple first_singular_value(const Eigen::MatrixXd& w, double tol,
                                    int max_iter, std::uint64_t seed) {
    if (w.rows() == 0 || w.cols() == 0) {
        throw InvalidArgument("first_singular_value: empty matrix");
    }
    if (!(tol > 0.0)) throw InvalidArgument("first_singular_value: tol must be positive");

    SingularTriple out;
    out.u = Eigen::VectorXd::Zero(w.rows());
    out.v = Eigen::VectorXd::Zero(w.cols());

    Rng rng(seed);
    auto random_unit = [&rng](Eigen::Index n) {
        Eigen::VectorXd x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.next_unit() - 0.5;
        double norm = x.norm();
        if (norm == 0.0) { x.setZero(); x(0) = 1.0; norm = 1.0; }
        return Eigen::VectorXd(x / norm);
    };

    if (w.norm() == 0.0) {
        // Zero matrix: sigma = 0 with arbitrary orthonormal vectors.
        out.u(0) = 1.0;
        out.v(0) = 1.0;
        out.converged = true;
        return out;
    }

    Eigen::VectorXd v = random_unit(w.cols());
    Eigen::VectorXd u(w.rows());
    Eigen::VectorXd wu(w.cols());
    out.converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd wv = w * v;
        const double sigma_u = wv.norm();
        if (sigma_u == 0.0) {
            // v landed in the null space; restart from a fresh direction.
            v = random_unit(w.cols());
            continue;
        }
        u = wv / sigma_u;
        wu.noalias() = w.transpose() * u;
        const double sigma = wu.norm();  // > 0 since sigma_u > 0
        out.iterations = it;
        out.sigma = sigma;
        out.u = u;
        out.v = v;  // the v paired with u: Wv = sigma_u * u exactly
        // Converged when the pair residual and the two sigma estimates agree.
        const double gap = sigma - sigma_u;
        const double residual = (wu - sigma_u * v).norm();
        if (gap <= 0.5 * tol * sigma && residual <= 0.5 * tol * sigma) {
            out.converged = true;
            break;
        }
        v = wu / sigma;
    }
    return out;
}

PairVerdict check_pair_fk(const AffinityGraph& g, const VertexSet& vs,
                          const VertexSet& vt, double eps, std::uint64_t seed) {
    require_pair(g, vs, vt, eps, "check_pair_fk");
    const int p = vs.size();
    const int q = vt.size();
    const double d = density(g, vs, vt);
    const Eigen::MatrixXd w = deviation_matrix(g, vs, vt);

    const double eps3 = eps * eps * eps;
    const double threshold = eps3 * std::sqrt(static_cast<double>(p) * q);
    const double svd_tol = 1e-9;
    const std::uint64_t base_seed = seed == 0 ? 1 : seed;
    const SingularTriple sv = first_singular_value(w, svd_tol, 50000, base_seed);

    if (sv.sigma < threshold) {
        // A pair violating eps-regularity would force sigma_1 >= eps^3 sqrt(pq).
        // An unconverged estimate only underestimates sigma_1, so take the
        // regular branch only with a safety margin; otherwise fall through to
        // the rounding attempt, whose validation decides.
        if (sv.converged || sv.sigma * (1.0 + 16.0 * svd_tol) < threshold) {
            return regular_verdict(CheckerKind::fk);
        }
    }

    const double level = std::pow(eps, 9) / 108.0;
    const int min_s = std::max(1, static_cast<int>(std::ceil(level * p)));
    const int min_t = std::max(1, static_cast<int>(std::ceil(level * q)));

    // Round S, T from the leading singular vectors: per sign side, sort the
    // coordinates by magnitude and sweep prefix pairs.
    auto sign_order = [](const Eigen::VectorXd& vec, bool positive) {
        std::vector<int> order;
        for (Eigen::Index i = 0; i < vec.size(); ++i) {
            if ((positive && vec(i) > 0.0) || (!positive && vec(i) < 0.0)) {
                order.push_back(static_cast<int>(i));
            }
        }
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(vec(a)) > std::abs(vec(b));
        });
        return order;
    };

    // Best validating prefix pair across the four sign-side combinations,
    // by total witnessed mass |W(S,T)|. Total mass (rather than average
    // deviation) lands on the full deviating structure, which keeps the
    // refinement's atoms balanced.
    Candidate best_cand;
    double best_mass = 0.0;
    auto sweep_triple = [&](const SingularTriple& triple) {
        for (bool row_pos : {true, false}) {
            const std::vector<int> rows = sign_order(triple.u, row_pos);
            if (static_cast<int>(rows.size()) < min_s) continue;
            for (bool col_pos : {true, false}) {
                const std::vector<int> cols = sign_order(triple.v, col_pos);
                if (static_cast<int>(cols.size()) < min_t) continue;
                // Prefix sums: P(i,j) = W(first i rows, first j cols).
                Eigen::MatrixXd prefix =
                    Eigen::MatrixXd::Zero(rows.size() + 1, cols.size() + 1);
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    for (std::size_t j = 0; j < cols.size(); ++j) {
                        prefix(i + 1, j + 1) = w(rows[i], cols[j]) + prefix(i, j + 1) +
                                               prefix(i + 1, j) - prefix(i, j);
                    }
                }
                for (std::size_t i = static_cast<std::size_t>(min_s); i <= rows.size(); ++i) {
                    for (std::size_t j = static_cast<std::size_t>(min_t); j <= cols.size(); ++j) {
                        const double mass = std::abs(prefix(i, j));
                        const double avg =
                            mass / (static_cast<double>(i) * static_cast<double>(j));
                        if (avg >= level && mass > best_mass) {
                            best_mass = mass;
                            best_cand.x.assign(rows.begin(),
                                               rows.begin() + static_cast<std::ptrdiff_t>(i));
                            best_cand.y.assign(cols.begin(),
                                               cols.begin() + static_cast<std::ptrdiff_t>(j));
                        }
                    }
                }
            }
        }
    };
    sweep_triple(sv);
    // Deflate and sweep the next two directions of the top subspace; with
    // near-degenerate leading singular values the strongest rounded witness
    // is not always on the first direction found.
    Eigen::MatrixXd deflated = w;
    SingularTriple lead = sv;
    for (std::uint64_t extra = 1; extra <= 2; ++extra) {
        deflated -= lead.sigma * lead.u * lead.v.transpose();
        lead = first_singular_value(deflated, svd_tol, 50000,
                                    mix_seed(base_seed, 0x6465666cULL, extra));
        if (lead.sigma < threshold) break;
        sweep_triple(lead);
    }

    // Alternating polish of the rounded pair: with one side fixed, the
    // best other side is a prefix of vertices ordered by their mass into
    // the fixed side. Keeps the strongest validating pair encountered.
    if (best_mass > 0.0) {
        auto polish_side = [&](const std::vector<int>& fixed, bool fixed_is_cols) {
            const int side_n = fixed_is_cols ? p : q;
            const int side_min = fixed_is_cols ? min_s : min_t;
            Eigen::VectorXd mass_into = Eigen::VectorXd::Zero(side_n);
            for (int fidx : fixed) {
                if (fixed_is_cols) mass_into += w.col(fidx);
                else mass_into += w.row(fidx).transpose();
            }
            std::vector<std::vector<int>> sides;
            for (bool positive : {true, false}) {
                std::vector<int> order;
                for (int i = 0; i < side_n; ++i) {
                    if ((positive && mass_into(i) > 0.0) || (!positive && mass_into(i) < 0.0)) {
                        order.push_back(i);
                    }
                }
                if (static_cast<int>(order.size()) < side_min) continue;
                std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                    return std::abs(mass_into(a)) > std::abs(mass_into(b));
                });
                // The |mass| of a prefix is monotone until the sign flips,
                // so the full same-sign list is the prefix optimum.
                sides.push_back(std::move(order));
            }
            return sides;
        };
        for (int round = 0; round < 2; ++round) {
            for (const auto& new_x : polish_side(best_cand.y, true)) {
                double mass = 0.0;
                for (int i : new_x) {
                    for (int j : best_cand.y) mass += w(i, j);
                }
                if (std::abs(mass) > best_mass &&
                    std::abs(mass) / (static_cast<double>(new_x.size()) *
                                      static_cast<double>(best_cand.y.size())) >= level) {
                    best_mass = std::abs(mass);
                    best_cand.x = new_x;
                }
            }
            for (const auto& new_y : polish_side(best_cand.x, false)) {
                double mass = 0.0;
                for (int i : best_cand.x) {
                    for (int j : new_y) mass += w(i, j);
                }
                if (std::abs(mass) > best_mass &&
                    std::abs(mass) / (static_cast<double>(best_cand.x.size()) *
                                      static_cast<double>(new_y.size())) >= level) {
                    best_mass = std::abs(mass);
                    best_cand.y = new_y;
                }
            }
        }
    }
    if (best_mass > 0.0) {
        for (int& x : best_cand.x) x = vs[static_cast<std::size_t>(x)];
        for (int& y : best_cand.y) y = vt[static_cast<std::size_t>(y)];
        auto cert = validate_candidate(g, best_cand, d, min_s, min_t, level);
        if (cert) return irregular_verdict(CheckerKind::fk, std::move(*cert));
    }
    return regular_verdict(CheckerKind::fk);
}

PairVerdict check_pair_exhaustive(const AffinityGraph& g, const VertexSet& vs,
                                  const VertexSet& vt, double eps) {
    require_pair(g, vs, vt, eps, "check_pair_exhaustive");
    const int p = vs.size();
    const int q = vt.size();
    if (p > 10 || q > 10) {
        throw InvalidArgument("check_pair_exhaustive: classes exceed enumeration bound (10)");
    }
    const double d = density(g, vs, vt);
    const Eigen::MatrixXd block = g.block(vs, vt);

    // Smallest subset sizes satisfying the strict |X| > eps|A| condition.
    int min_x = 1;
    while (!(static_cast<double>(min_x) > eps * p)) ++min_x;
    int min_y = 1;
    while (!(static_cast<double>(min_y) > eps * q)) ++min_y;

    const std::uint32_t x_masks = 1u << p;
    const std::uint32_t y_masks = 1u << q;

    // row_sums[y] for the current X; edge sums over Y by subset DP.
    std::vector<double> row_sums(static_cast<std::size_t>(q), 0.0);
    std::vector<double> edge_sum(y_masks, 0.0);

    double best_dev = -1.0;
    std::uint32_t best_x = 0, best_y = 0;

    for (std::uint32_t mx = 1; mx < x_masks; ++mx) {
        const int xsz = std::popcount(mx);
        if (xsz < min_x) continue;
        for (int y = 0; y < q; ++y) {
            double s = 0.0;
            for (int x = 0; x < p; ++x) {
                if (mx & (1u << x)) s += block(x, y);
            }
            row_sums[static_cast<std::size_t>(y)] = s;
        }
        for (std::uint32_t my = 1; my < y_masks; ++my) {
            const int low = std::countr_zero(my);
            edge_sum[my] = edge_sum[my & (my - 1)] + row_sums[static_cast<std::size_t>(low)];
            const int ysz = std::popcount(my);
            if (ysz < min_y) continue;
            const double dev = std::abs(edge_sum[my] / (static_cast<double>(xsz) * ysz) - d);
            if (dev >= eps && dev > best_dev) {
                best_dev = dev;
                best_x = mx;
                best_y = my;
            }
        }
    }

    if (best_dev < 0.0) return regular_verdict(CheckerKind::exhaustive);

    Candidate cand;
    for (int x = 0; x < p; ++x) {
        if (best_x & (1u << x)) cand.x.push_back(vs[static_cast<std::size_t>(x)]);
    }
    for (int y = 0; y < q; ++y) {
        if (best_y & (1u << y)) cand.y.push_back(vt[static_cast<std::size_t>(y)]);
    }
    auto cert = validate_candidate(g, cand, d, min_x, min_y, eps);
    if (!cert) return regular_verdict(CheckerKind::exhaustive);
    return irregular_verdict(CheckerKind::exhaustive, std::move(*cert));
}

}  // namespace regc
