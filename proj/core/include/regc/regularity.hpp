#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "regc/graph.hpp"

namespace regc {

/// Witness that a class pair is irregular: subsets x, y whose density
/// deviates from the pair density by at least `level`. Validated at
/// construction; a certificate violating deviation >= level cannot exist.
struct Certificate {
    VertexSet x;       // subset of the first class
    VertexSet y;       // subset of the second class
    double deviation;  // observed |d(x,y) - d(V_s,V_t)|
    double level;      // the eps^4 (Alon) or eps^9/108 (FK) level witnessed

    Certificate(VertexSet x_, VertexSet y_, double deviation_, double level_);
};

enum class CheckerKind { alon, fk, exhaustive };

std::string to_string(CheckerKind kind);
CheckerKind checker_from_string(const std::string& s);

/// Outcome of a pair regularity check. Irregular verdicts always carry a
/// validated certificate. `s`, `t` are class indices, stamped by the
/// partition driver; direct checker calls leave them at -1.
struct PairVerdict {
    bool regular = true;
    std::optional<Certificate> certificate;
    CheckerKind checker = CheckerKind::alon;
    int s = -1;
    int t = -1;
};

/// Pair check following Alon et al.: declare the pair eps-regular or emit a
/// certificate with |x|, |y| >= ceil((eps^4/16) n) and deviation >= eps^4.
/// Steps: low-density shortcut, degree-deviation scan, then co-neighborhood
/// deviation around a pivot. Every candidate is post-validated against the
/// size and deviation bounds; when nothing validates the pair is declared
/// regular. Classes must be disjoint, nonempty and equal-sized.
PairVerdict check_pair_alon(const AffinityGraph& g, const VertexSet& vs,
                            const VertexSet& vt, double eps);

/// Pair check following Frieze-Kannan: compute the first singular value of
/// the centered block W. sigma_1 < eps^3 sqrt(pq) certifies eps-regularity;
/// otherwise S, T are rounded from the leading singular vectors and
/// post-validated at level eps^9/108. Classes may differ in size.
PairVerdict check_pair_fk(const AffinityGraph& g, const VertexSet& vs,
                          const VertexSet& vt, double eps,
                          std::uint64_t seed = 0);

/// Brute-force oracle: enumerates every subset pair X, Y with
/// |X| > eps|vs|, |Y| > eps|vt| and reports the maximum-deviation witness
/// with |d(X,Y) - d(vs,vt)| >= eps, if any. Exact per the definition of an
/// eps-regular pair (>= at the boundary). Classes capped at 10 vertices.
PairVerdict check_pair_exhaustive(const AffinityGraph& g, const VertexSet& vs,
                                  const VertexSet& vt, double eps);

struct SingularTriple {
    double sigma = 0.0;
    Eigen::VectorXd u;  // left singular vector, unit norm
    Eigen::VectorXd v;  // right singular vector, unit norm
    bool converged = true;
    int iterations = 0;
};

/// Largest singular value and vectors by alternating power iteration on
/// W^T W, from a seeded random start. Converged results satisfy
/// |W v - sigma u| <= tol * sigma + 1e-12; non-convergence after max_iter
/// returns the best estimate with converged = false.
SingularTriple first_singular_value(const Eigen::MatrixXd& w, double tol = 1e-9,
                                    int max_iter = 50000, std::uint64_t seed = 1);

}  // namespace regc
