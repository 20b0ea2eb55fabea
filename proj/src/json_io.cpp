#include "gpick/json_io.hpp"

namespace gpick::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int integer(const Json& j) {
    if (!j.is_number_integer()) throw InvalidInputError("expected an integer");
    return j.get<int>();
}

bool is_complex(const Json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const GPoint& point) { return Json::array({to_json(point.s), to_json(point.p)}); }

Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const NodeSet& nodes) {
    Json out = Json::array();
    for (const auto& node : nodes) out.push_back(to_json(node));
    return out;
}

Json to_json(const std::vector<Complex>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(to_json(v));
    return out;
}

Json to_json(const KernelSample& sample) {
    return Json{{"nodes", to_json(sample.nodes)}, {"block_dim", sample.gram.block_dim()}, {"gram", to_json(sample.gram.flat())}};
}

Json to_json(const CPCertificate& cert) {
    Json blocks = Json::array();
    for (const auto& b : cert.blocks) blocks.push_back(to_json(b.flat()));
    return Json{{"nodes", to_json(cert.nodes)}, {"atoms", to_json(cert.atoms)}, {"block_dim", cert.block_dim()}, {"blocks", blocks}};
}

Json to_json(const Colligation& col) {
    return Json{{"dim_in", col.dim_in()},   {"dim_out", col.dim_out()}, {"atoms", to_json(col.atoms())},
                {"mults", col.mults()},     {"V", to_json(col.V())}};
}

Json to_json(const ScreenReport& report) {
    return Json{{"pass", report.pass},
                {"worst_eig", report.worst_eig},
                {"worst_kernel", report.worst_kernel},
                {"kernels_checked", report.kernels_checked}};
}

Json to_json(const AdmissibilityReport& report) {
    return Json{{"pass", report.pass}, {"worst_eig", report.worst_eig}, {"worst_alpha", to_json(report.worst_alpha)}};
}

Json to_json(const FeasibilityResult& result) {
    return Json{{"status", to_string(result.status)},
                {"iterations", result.iterations},
                {"affine_residual", result.affine_residual},
                {"psd_residual", result.psd_residual},
                {"polished", result.polished}};
}

Json to_json(const SolveReport& report) {
    Json out{{"status", to_string(report.status)}, {"reason", report.reason}};
    if (report.screen) out["screen"] = to_json(*report.screen);
    if (report.feasibility) out["feasibility"] = to_json(*report.feasibility);
    if (report.colligation) {
        out["max_interp_error"] = report.max_interp_error;
        out["sampled_norm"] = report.sampled_norm;
        out["sampled_norm_is_lower_bound"] = true;
    }
    if (report.certificate) out["certificate"] = to_json(*report.certificate);
    if (report.colligation) out["colligation"] = to_json(*report.colligation);
    return out;
}

Json to_json(const DivisionReport& report) {
    Json out{{"status", to_string(report.status)}, {"reason", report.reason}};
    if (report.screen) out["screen"] = to_json(*report.screen);
    if (report.feasibility) out["feasibility"] = to_json(*report.feasibility);
    if (report.colligation) {
        out["max_division_error"] = report.max_division_error;
        out["sampled_norm"] = report.sampled_norm;
        out["sampled_norm_is_lower_bound"] = true;
    }
    if (report.certificate) out["certificate"] = to_json(*report.certificate);
    if (report.colligation) out["colligation"] = to_json(*report.colligation);
    return out;
}

Complex complex_from(const Json& j) {
    if (is_complex(j)) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_number()) return {j.get<double>(), 0.0};
    throw InvalidInputError("expected a complex number [re, im]");
}

GPoint point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidInputError("expected a point [s, p]");
    return {complex_from(j[0]), complex_from(j[1])};
}

CMatrix matrix_from(const Json& j) {
    if (is_complex(j) || j.is_number()) return CMatrix::Constant(1, 1, complex_from(j));
    if (!j.is_array() || j.empty()) throw InvalidInputError("expected a matrix (array of rows)");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) throw InvalidInputError("expected a matrix (array of rows)");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw InvalidInputError("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

NodeSet nodes_from(const Json& j) {
    if (!j.is_array()) throw InvalidInputError("expected an array of points");
    NodeSet nodes;
    for (const auto& item : j) nodes.push_back(point_from(item));
    return nodes;
}

std::vector<Complex> complex_list_from(const Json& j) {
    if (!j.is_array()) throw InvalidInputError("expected an array of complex numbers");
    std::vector<Complex> out;
    for (const auto& item : j) out.push_back(complex_from(item));
    return out;
}

KernelSample kernel_sample_from(const Json& j) {
    KernelSample sample;
    sample.nodes = nodes_from(field(j, "nodes"));
    const int d = j.contains("block_dim") ? integer(j.at("block_dim")) : 1;
    const CMatrix flat = matrix_from(field(j, "gram"));
    if (flat.rows() != static_cast<Eigen::Index>(sample.nodes.size()) * d) throw InvalidInputError("gram size does not match nodes");
    sample.gram = BlockHermitian(flat, d);
    return sample;
}

CPCertificate certificate_from(const Json& j) {
    CPCertificate cert;
    cert.nodes = nodes_from(field(j, "nodes"));
    cert.atoms = complex_list_from(field(j, "atoms"));
    const int d = j.contains("block_dim") ? integer(j.at("block_dim")) : 1;
    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array()) throw InvalidInputError("blocks must be an array");
    for (const auto& b : blocks) cert.blocks.emplace_back(matrix_from(b), d);
    cert.validate();
    return cert;
}

Colligation colligation_from(const Json& j) {
    std::vector<int> mults;
    const Json& mj = field(j, "mults");
    if (!mj.is_array()) throw InvalidInputError("mults must be an array");
    for (const auto& m : mj) mults.push_back(integer(m));
    int state = 0;
    for (int m : mults) state += m;
    const int dim_in = integer(field(j, "dim_in"));
    const int dim_out = integer(field(j, "dim_out"));
    // An empty V (no coefficient or state space) has no rows to read.
    CMatrix v = (dim_in + state == 0 || dim_out + state == 0) ? CMatrix(dim_out + state, dim_in + state)
                                                              : matrix_from(field(j, "V"));
    return Colligation(dim_in, dim_out, complex_list_from(field(j, "atoms")), std::move(mults), std::move(v));
}

InterpolationProblem interpolation_problem_from(const Json& j) {
    InterpolationProblem problem;
    problem.nodes = nodes_from(field(j, "nodes"));
    const Json& targets = field(j, "targets");
    if (!targets.is_array()) throw InvalidInputError("targets must be an array");
    for (const auto& t : targets) problem.targets.push_back(matrix_from(t));
    problem.validate();
    return problem;
}

DivisionProblem division_problem_from(const Json& j) {
    DivisionProblem problem;
    problem.nodes = nodes_from(field(j, "nodes"));
    const Json& phi = field(j, "Phi");
    const Json& theta = field(j, "Theta");
    if (!phi.is_array() || !theta.is_array()) throw InvalidInputError("Phi and Theta must be arrays");
    for (const auto& m : phi) problem.phi.push_back(matrix_from(m));
    for (const auto& m : theta) problem.theta.push_back(matrix_from(m));
    problem.validate();
    return problem;
}

}  // namespace gpick::io
