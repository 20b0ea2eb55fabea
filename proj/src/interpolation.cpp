#include "gpick/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "gpick/gdomain.hpp"
#include "gpick/kernels.hpp"

namespace gpick {

void InterpolationProblem::validate() const {
    if (nodes.empty()) throw InvalidInputError("interpolation problem: no nodes");
    if (targets.size() != nodes.size()) throw InvalidInputError("interpolation problem: one target per node required");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!in_G(nodes[i]).inside) throw InvalidInputError("interpolation problem: node " + std::to_string(i) + " is not in G");
        for (std::size_t j = 0; j < i; ++j) {
            if (nodes[i] == nodes[j]) throw InvalidInputError("interpolation problem: repeated node");
        }
        if (targets[i].rows() != dim_out() || targets[i].cols() != dim_in() || targets[i].size() == 0) {
            throw InvalidInputError("interpolation problem: targets must share one non-empty shape");
        }
    }
}

BlockHermitian InterpolationProblem::defect_kernel() const {
    const int n = static_cast<int>(nodes.size());
    const int d = dim_out();
    CMatrix flat(n * d, n * d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            flat.block(i * d, j * d, d, d) = CMatrix::Identity(d, d) - targets[i] * targets[j].adjoint();
        }
    }
    return BlockHermitian(flat, d);
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return out;
}

}  // namespace

ScreenReport kernel_screen(const NodeSet& nodes, const BlockHermitian& J, int family_size, std::uint64_t seed,
                           double tol) {
    const int n = J.nodes();
    const int d = J.block_dim();
    const auto family = admissible_family(nodes, family_size, seed, d);
    ScreenReport report;
    report.worst_eig = std::numeric_limits<double>::infinity();
    const int dd = d * d;
    for (std::size_t k = 0; k < family.size(); ++k) {
        CMatrix big(n * dd, n * dd);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const CMatrix jb = J.block(i, j);
                const CMatrix kb = family[k].gram.block(i, j);
                big.block(i * dd, j * dd, dd, dd) = kron(jb, kb);
            }
        }
        const double e = min_eig(CMatrix(0.5 * (big + big.adjoint())));
        if (e < report.worst_eig) {
            report.worst_eig = e;
            report.worst_kernel = static_cast<int>(k);
        }
        ++report.kernels_checked;
    }
    report.pass = report.worst_eig >= -tol;
    return report;
}

ScreenReport pick_check(const InterpolationProblem& problem, int family_size, std::uint64_t seed, double tol) {
    problem.validate();
    return kernel_screen(problem.nodes, problem.defect_kernel(), family_size, seed, tol);
}

std::vector<Complex> default_atoms(int circle, bool include_center) {
    std::vector<Complex> atoms;
    for (int k = 0; k < circle; ++k) atoms.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / circle));
    if (include_center) atoms.emplace_back(0.0, 0.0);
    return atoms;
}

std::string to_string(FeasibilityStatus status) {
    switch (status) {
        case FeasibilityStatus::feasible: return "feasible";
        case FeasibilityStatus::infeasible_sign: return "infeasible_sign";
        case FeasibilityStatus::stalled: return "stalled";
        case FeasibilityStatus::max_iterations: return "max_iterations";
    }
    return "unknown";
}

namespace {

struct AffineSet {
    // weights[k](i, j) = 1 - phi(alpha_k, lambda_i) conj(phi(alpha_k, lambda_j))
    std::vector<CMatrix> weights;
    Eigen::MatrixXd weight_norm2;  // sum_k |weights[k](i, j)|^2
    CMatrix target;                // flattened J
    int block_dim = 1;

    Complex weight(std::size_t k, Eigen::Index r, Eigen::Index c) const { return weights[k](r / block_dim, c / block_dim); }

    CMatrix apply(const std::vector<CMatrix>& x) const {
        CMatrix out = CMatrix::Zero(target.rows(), target.cols());
        for (std::size_t k = 0; k < x.size(); ++k) {
            for (Eigen::Index c = 0; c < target.cols(); ++c) {
                for (Eigen::Index r = 0; r < target.rows(); ++r) out(r, c) += weight(k, r, c) * x[k](r, c);
            }
        }
        return out;
    }

    /// Orthogonal projection onto {x : apply(x) == target}, entry by entry.
    void project(std::vector<CMatrix>& x) const {
        const CMatrix gap = target - apply(x);
        for (std::size_t k = 0; k < x.size(); ++k) {
            for (Eigen::Index c = 0; c < target.cols(); ++c) {
                for (Eigen::Index r = 0; r < target.rows(); ++r) {
                    x[k](r, c) += std::conj(weight(k, r, c)) * gap(r, c) / weight_norm2(r / block_dim, c / block_dim);
                }
            }
        }
    }

    double residual(const std::vector<CMatrix>& x) const { return (apply(x) - target).cwiseAbs().maxCoeff(); }
};

/// Levenberg-Marquardt on the factored form Gamma_k = L_k L_k^*, started from
/// the PSD iterate. Affine constraints are imposed on the upper triangle (real
/// diagonal, real and imaginary parts above it). Returns the polished blocks.
std::vector<CMatrix> polish_factored(const AffineSet& affine, const std::vector<CMatrix>& start, int max_iters,
                                     double target_tol) {
    const Eigen::Index n = affine.target.rows();
    const std::size_t m = start.size();
    const Eigen::Index rows = n * n;
    const Eigen::Index params = static_cast<Eigen::Index>(2 * m) * n * n;

    // Upper-triangle coordinates of the residual vector.
    Eigen::MatrixXi re_idx(n, n), im_idx(n, n);
    Eigen::Index next = 0;
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r; c < n; ++c) {
            re_idx(r, c) = static_cast<int>(next++);
            im_idx(r, c) = r == c ? -1 : static_cast<int>(next++);
        }
    }

    double largest = 0.0;
    for (const auto& g : start) largest = std::max(largest, hermitian_norm(g));
    const double floor = 1e-8 * std::max(largest, 1.0);
    std::vector<CMatrix> factors;
    for (const auto& g : start) {
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(g);
        const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(floor).cwiseSqrt();
        factors.push_back(eig.eigenvectors() * lam.asDiagonal());
    }

    auto gram = [&](const std::vector<CMatrix>& l) {
        std::vector<CMatrix> g;
        for (const auto& f : l) g.push_back(f * f.adjoint());
        return g;
    };
    auto residual_vector = [&](const std::vector<CMatrix>& l) {
        const CMatrix diff = affine.apply(gram(l)) - affine.target;
        Eigen::VectorXd v(rows);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = r; c < n; ++c) {
                v(re_idx(r, c)) = diff(r, c).real();
                if (r != c) v(im_idx(r, c)) = diff(r, c).imag();
            }
        }
        return v;
    };
    auto put = [&](Eigen::MatrixXd& jac, Eigen::Index col, Eigen::Index r, Eigen::Index c, Complex value) {
        jac(re_idx(r, c), col) += value.real();
        if (r != c) jac(im_idx(r, c), col) += value.imag();
    };

    Eigen::VectorXd f = residual_vector(factors);
    double mu = -1.0;
    Eigen::MatrixXd jac(rows, params);
    for (int iter = 0; iter < max_iters && f.cwiseAbs().maxCoeff() > target_tol; ++iter) {
        jac.setZero();
        Eigen::Index col = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const CMatrix& l = factors[k];
            for (Eigen::Index a = 0; a < n; ++a) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    for (const Complex e : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
                        // d(L L^*) for L(a, j) += e touches row a and column a only.
                        for (Eigen::Index q = a; q < n; ++q) {
                            Complex dg = e * std::conj(l(q, j));
                            if (q == a) dg += l(a, j) * std::conj(e);
                            put(jac, col, a, q, affine.weight(k, a, q) * dg);
                        }
                        for (Eigen::Index p = 0; p < a; ++p) {
                            put(jac, col, p, a, affine.weight(k, p, a) * l(p, j) * std::conj(e));
                        }
                        ++col;
                    }
                }
            }
        }
        const Eigen::MatrixXd normal = jac * jac.transpose();
        if (mu < 0.0) mu = 1e-8 * std::max(normal.diagonal().maxCoeff(), 1e-300);

        bool accepted = false;
        for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
            const Eigen::MatrixXd damped = normal + mu * Eigen::MatrixXd::Identity(rows, rows);
            const Eigen::VectorXd step = -jac.transpose() * damped.ldlt().solve(f);
            std::vector<CMatrix> trial = factors;
            Eigen::Index c = 0;
            for (std::size_t k = 0; k < m; ++k) {
                for (Eigen::Index a = 0; a < n; ++a) {
                    for (Eigen::Index j = 0; j < n; ++j) {
                        trial[k](a, j) += Complex(step(c), step(c + 1));
                        c += 2;
                    }
                }
            }
            const Eigen::VectorXd ft = residual_vector(trial);
            if (ft.norm() < f.norm()) {
                factors = std::move(trial);
                f = ft;
                mu = std::max(mu / 3.0, 1e-300);
                accepted = true;
            } else {
                mu *= 4.0;
            }
        }
        if (!accepted) break;
    }
    return gram(factors);
}

double frobenius_distance(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
    double total = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) total += (a[k] - b[k]).squaredNorm();
    return std::sqrt(total);
}

}  // namespace

FeasibilityResult delta_feasibility(const NodeSet& nodes, const BlockHermitian& J, const std::vector<Complex>& atoms,
                                    const FeasibilityOptions& options) {
    if (atoms.empty()) throw InvalidInputError("delta_feasibility: atom set is empty");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (std::abs(atoms[k]) > 1.0 + 1e-12) throw InvalidInputError("delta_feasibility: atom outside the closed disk");
        for (std::size_t j = 0; j < k; ++j) {
            if (atoms[j] == atoms[k]) throw InvalidInputError("delta_feasibility: repeated atom");
        }
    }
    if (J.nodes() != static_cast<int>(nodes.size())) throw InvalidInputError("delta_feasibility: J does not match nodes");

    const int n = J.nodes();
    const int d = J.block_dim();
    FeasibilityResult result;

    // Every weight 1 - |phi(alpha, lambda_i)|^2 on the diagonal is positive, so a
    // non-PSD diagonal block of J rules out any PSD Gamma.
    for (int i = 0; i < n; ++i) {
        if (min_eig(J.block(i, i)) < -options.affine_tol) {
            result.status = FeasibilityStatus::infeasible_sign;
            return result;
        }
    }

    AffineSet affine;
    affine.block_dim = d;
    affine.target = J.flat();
    affine.weight_norm2 = Eigen::MatrixXd::Zero(n, n);
    for (const auto& alpha : atoms) {
        affine.weights.push_back(phi_schur_weights(alpha, nodes));
        affine.weight_norm2 += affine.weights.back().cwiseAbs2();
    }

    const std::size_t m = atoms.size();
    const CMatrix zero = CMatrix::Zero(n * d, n * d);
    std::vector<CMatrix> x(m, zero), p(m, zero), q(m, zero), y(m, zero);
    std::deque<double> history;

    for (int iter = 1; iter <= options.max_iters; ++iter) {
        // Dykstra step on the affine set.
        for (std::size_t k = 0; k < m; ++k) y[k] = x[k] + p[k];
        affine.project(y);
        for (std::size_t k = 0; k < m; ++k) p[k] = x[k] + p[k] - y[k];
        // Dykstra step on the PSD cones.
        for (std::size_t k = 0; k < m; ++k) {
            const CMatrix shifted = y[k] + q[k];
            x[k] = psd_project(shifted);
            q[k] = shifted - x[k];
        }

        result.iterations = iter;
        result.affine_residual = affine.residual(x);
        result.psd_residual = frobenius_distance(x, y);
        const double score = std::max(result.affine_residual, result.psd_residual);
        if (result.affine_residual <= options.affine_tol && result.psd_residual <= options.affine_tol) {
            result.status = FeasibilityStatus::feasible;
            break;
        }
        history.push_back(score);
        if (static_cast<int>(history.size()) > options.stall_window) {
            const double old = history.front();
            history.pop_front();
            if (score > (1.0 - options.stall_decrease) * old) {
                result.status = FeasibilityStatus::stalled;
                break;
            }
        }
        if (iter == options.max_iters) result.status = FeasibilityStatus::max_iterations;
    }

    if (result.status != FeasibilityStatus::feasible && options.polish_iters > 0) {
        std::vector<CMatrix> polished = polish_factored(affine, x, options.polish_iters, 0.1 * options.affine_tol);
        const double residual = affine.residual(polished);
        if (residual <= options.affine_tol) {
            x = std::move(polished);
            result.status = FeasibilityStatus::feasible;
            result.polished = true;
            result.affine_residual = residual;
            result.psd_residual = 0.0;
        }
    }

    CPCertificate cert;
    cert.nodes = nodes;
    cert.atoms = atoms;
    for (auto& block : x) cert.blocks.emplace_back(block, d);
    result.certificate = std::move(cert);
    return result;
}

FeasibilityResult delta_feasibility(const InterpolationProblem& problem, const std::vector<Complex>& atoms,
                                    const FeasibilityOptions& options) {
    problem.validate();
    return delta_feasibility(problem.nodes, problem.defect_kernel(), atoms, options);
}

Colligation lurking_isometry_colligation(const std::vector<CMatrix>& P, const std::vector<CMatrix>& Q,
                                         const CPCertificate& cert, const SynthesisOptions& options) {
    cert.validate();
    const int n_nodes = static_cast<int>(cert.nodes.size());
    if (static_cast<int>(P.size()) != n_nodes || static_cast<int>(Q.size()) != n_nodes) {
        throw InvalidInputError("synthesis: data does not match certificate nodes");
    }
    const int d = cert.block_dim();
    const int a = static_cast<int>(P.front().cols());
    const int b = static_cast<int>(Q.front().cols());
    for (int i = 0; i < n_nodes; ++i) {
        if (P[i].rows() != d || Q[i].rows() != d || P[i].cols() != a || Q[i].cols() != b) {
            throw InvalidInputError("synthesis: data shapes are inconsistent");
        }
    }

    const GNSFactor gns = gns_factor(cert, options.rank_tol);
    const int state = gns.state_dim();
    const int coef = std::max(a, b);
    const int ambient = coef + state;
    const std::vector<Complex> ones(cert.atoms.size(), Complex(1.0));

    CMatrix from = CMatrix::Zero(ambient, n_nodes * d);
    CMatrix to = CMatrix::Zero(ambient, n_nodes * d);
    for (int i = 0; i < n_nodes; ++i) {
        std::vector<Complex> phis;
        for (const auto& alpha : cert.atoms) phis.push_back(phi(alpha, cert.nodes[i]));
        const CMatrix l_one_star = gns.L(i, ones).adjoint();  // state x d
        const CMatrix z_star = gns.pi(phis).adjoint();
        from.block(0, i * d, a, d) = P[i].adjoint();
        from.block(coef, i * d, state, d) = z_star * l_one_star;
        to.block(0, i * d, b, d) = Q[i].adjoint();
        to.block(coef, i * d, state, d) = l_one_star;
    }

    const PartialIsometry v1 = solve_isometry(IsometryData::make(from, to), options.gram_tol);
    const CMatrix u = extend_to_unitary(v1).unitary;
    const CMatrix v_full = u.adjoint();

    // Drop padding coordinates: rows beyond a and columns beyond b in the coefficient part.
    CMatrix v(a + state, b + state);
    v.topLeftCorner(a, b) = v_full.topLeftCorner(a, b);
    v.topRightCorner(a, state) = v_full.block(0, coef, a, state);
    v.bottomLeftCorner(state, b) = v_full.block(coef, 0, state, b);
    v.bottomRightCorner(state, state) = v_full.bottomRightCorner(state, state);

    std::vector<Complex> atoms;
    std::vector<int> mults;
    for (std::size_t k = 0; k < cert.atoms.size(); ++k) {
        if (gns.rep_dims[k] == 0) continue;
        atoms.push_back(cert.atoms[k]);
        mults.push_back(gns.rep_dims[k]);
    }
    return Colligation(b, a, std::move(atoms), std::move(mults), std::move(v));
}

Colligation synthesize(const InterpolationProblem& problem, const CPCertificate& cert, const SynthesisOptions& options) {
    problem.validate();
    if (cert.nodes != problem.nodes) throw InvalidInputError("synthesize: certificate nodes differ from problem nodes");
    const int d = problem.dim_out();
    std::vector<CMatrix> P(problem.nodes.size(), CMatrix::Identity(d, d));
    return lurking_isometry_colligation(P, problem.targets, cert, options);
}

Colligation synthesize(const InterpolationProblem& problem, const CPCertificate& cert, double tol) {
    return synthesize(problem, cert, SynthesisOptions{tol, tol * 1e-2});
}

std::vector<Complex> SolverConfig::resolved_atoms() const {
    return atoms.empty() ? default_atoms(circle_atoms, include_center) : atoms;
}

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::feasible: return "feasible";
        case SolveStatus::infeasible_screen: return "infeasible_screen";
        case SolveStatus::solver_failed: return "solver_failed";
    }
    return "unknown";
}

SolveReport solve(const InterpolationProblem& problem, const SolverConfig& config) {
    problem.validate();
    SolveReport report;
    if (config.screen) {
        report.screen = pick_check(problem, config.family_size, config.seed, config.screen_tol);
        if (!report.screen->pass) {
            report.status = SolveStatus::infeasible_screen;
            report.reason = "pick_screen";
            return report;
        }
    }

    report.feasibility = delta_feasibility(problem, config.resolved_atoms(), config.feasibility);
    switch (report.feasibility->status) {
        case FeasibilityStatus::feasible: break;
        case FeasibilityStatus::infeasible_sign:
            report.status = SolveStatus::infeasible_screen;
            report.reason = "sign_obstruction";
            return report;
        case FeasibilityStatus::stalled:
        case FeasibilityStatus::max_iterations:
            report.status = SolveStatus::solver_failed;
            report.reason = to_string(report.feasibility->status);
            return report;
    }
    report.certificate = report.feasibility->certificate;

    try {
        report.colligation = synthesize(problem, *report.certificate, config.synthesis);
    } catch (const Error& e) {
        report.status = SolveStatus::solver_failed;
        report.reason = std::string("synthesis: ") + e.what();
        return report;
    }

    for (std::size_t i = 0; i < problem.nodes.size(); ++i) {
        const CMatrix err = transfer_eval(*report.colligation, problem.nodes[i]) - problem.targets[i];
        report.max_interp_error = std::max(report.max_interp_error, spectral_norm(err));
    }
    report.sampled_norm = sup_norm_estimate(*report.colligation, config.norm_samples, config.seed).value;
    if (report.max_interp_error <= config.interp_tol) {
        report.status = SolveStatus::feasible;
        report.reason = "certificate";
    } else {
        report.status = SolveStatus::solver_failed;
        report.reason = "interpolation_error";
    }
    return report;
}

}  // namespace gpick
