#pragma once

// Global assembly of rod elements, free/restrained partitioning, modal
// analysis and time integration of
//   M_ff q'' + K_ff q + g_f(q) = f_f(t).
//
// Global DOF ordering is node-major: X, Y, Z, Phi_x, Phi_y, Phi_z per node.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosserat/element.hpp"

namespace cosserat {

inline constexpr int kNodeDofs = 6;

inline int global_dof(int node, int local) { return kNodeDofs * node + local; }

struct MeshElement {
    int node_a = 0;
    int node_b = 1;
    SectionProperties section;
    double length = 0.0;
};

struct Mesh {
    std::vector<double> nodes;  // axial coordinates (m)
    std::vector<MeshElement> elements;
    std::vector<int> restrained;  // global DOF indices, sorted, unique

    int node_count() const { return static_cast<int>(nodes.size()); }
    int dof_count() const { return kNodeDofs * node_count(); }

    /// n equal elements over [0, length], nothing restrained.
    static Mesh uniform(double length, int elements, const SectionProperties& sec);
    void restrain(int node, int local_dof);
    void clamp(int node);
    /// Throws ConfigurationError on overlapping elements or bad DOF indices.
    void validate() const;
};

class GlobalSystem {
public:
    GlobalSystem(Mesh mesh, std::vector<ElementOperators> element_ops);

    const Mesh& mesh() const { return mesh_; }
    int dof_count() const { return mesh_.dof_count(); }
    const Eigen::MatrixXd& M() const { return M_; }
    const Eigen::MatrixXd& K() const { return K_; }
    const ElementOperators& element(int e) const { return ops_[static_cast<std::size_t>(e)]; }

    bool nonlinear() const { return nonlinear_; }
    Eigen::VectorXd nonlinear_force(const Eigen::VectorXd& q) const;
    Eigen::MatrixXd nonlinear_jacobian(const Eigen::VectorXd& q) const;
    double nonlinear_potential(const Eigen::VectorXd& q) const;

private:
    Vec12 gather(const Eigen::VectorXd& q, int e) const;

    Mesh mesh_;
    std::vector<ElementOperators> ops_;
    // Elements sharing identical operators, evaluated together.
    struct Group {
        std::size_t representative;
        std::vector<int> bases;
    };
    std::vector<Group> groups_;
    Eigen::MatrixXd M_;
    Eigen::MatrixXd K_;
    bool nonlinear_ = false;
};

/// Builds identical elements once and assembles.
GlobalSystem build_system(const Mesh& mesh, const BuildOptions& opts = {});

class FreeSystem {
public:
    explicit FreeSystem(const GlobalSystem& sys);

    const GlobalSystem& system() const { return *sys_; }
    const std::vector<int>& free_dofs() const { return free_; }
    const std::vector<int>& restrained_dofs() const { return restrained_; }
    int size() const { return static_cast<int>(free_.size()); }
    const Eigen::MatrixXd& M() const { return M_; }
    const Eigen::MatrixXd& K() const { return K_; }
    const Eigen::LLT<Eigen::MatrixXd>& mass_factor() const { return llt_; }

    Eigen::VectorXd expand(const Eigen::VectorXd& qf) const;
    Eigen::VectorXd restrict(const Eigen::VectorXd& full) const;
    /// Index of a global DOF among the free ones, or -1.
    int free_index(int global) const;

    Eigen::VectorXd nonlinear_force(const Eigen::VectorXd& qf) const;
    Eigen::MatrixXd nonlinear_jacobian(const Eigen::VectorXd& qf) const;
    double energy(const Eigen::VectorXd& qf, const Eigen::VectorXd& vf) const;

    /// Support actions R = M_rf a_f + K_rf q_f + g_r(q) - f_r with zero
    /// support motion; f_full is the applied load on all DOFs.
    Eigen::VectorXd reactions(const Eigen::VectorXd& qf, const Eigen::VectorXd& af,
                              const Eigen::VectorXd& f_full) const;

private:
    const GlobalSystem* sys_;
    std::vector<int> free_;
    std::vector<int> restrained_;
    std::vector<int> index_;
    Eigen::MatrixXd M_;
    Eigen::MatrixXd K_;
    Eigen::MatrixXd M_rf_;
    Eigen::MatrixXd K_rf_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Newton solution of K q + g(q) = f on the free DOFs, starting from the
/// linear solution. Throws DomainError without convergence.
Eigen::VectorXd solve_static(const FreeSystem& fs, const Eigen::VectorXd& f, int max_iterations = 50);

struct Mode {
    double omega = 0.0;
    Eigen::VectorXd shape;  // free DOFs, mass-normalized
    std::string plane;      // e1-e3 | e2-e3 | axial | torsion | coupled
};

std::vector<Mode> modal(const FreeSystem& fs);

/// Plane label from mass-weighted DOF-family shares with a 0.10 margin.
std::string classify_mode(const FreeSystem& fs, const Eigen::VectorXd& shape);

/// Ascending roots of cos(x) cosh(x) = -1.
std::vector<double> cbt_roots(int count);
std::vector<double> cbt_frequencies(double length, double EI, double rhoA, int count);

enum class Waveform { kCos, kSin };

struct PointLoad {
    int node = 0;
    int dof = 0;  // 0..5
    double amplitude = 0.0;
    double frequency = 0.0;  // rad/s
    double phase = 0.0;      // rad
    Waveform kind = Waveform::kCos;

    double value(double t) const;
};

struct Loading {
    std::vector<PointLoad> point;
    /// Time-independent nodal loads on all DOFs (may be empty).
    Eigen::VectorXd constant;

    Eigen::VectorXd full(double t, int dofs) const;
    bool empty() const;
};

/// Nodal loads equivalent to uniform distributed force and torque per
/// unit length along every element.
Eigen::VectorXd uniform_distributed_loads(const Mesh& mesh, const Vec3& force, const Vec3& torque);

struct IntegrateOptions {
    double t_end = 1.0;
    double tol = 1e-8;
    double output_dt = 1e-3;
    bool nonlinear = true;
};

struct TimeSeries {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> q;  // free DOFs
    std::vector<Eigen::VectorXd> v;
};

/// Output rows at k * output_dt for k = 0 .. floor(t_end / output_dt).
/// Throws IntegratorError when the step size collapses or the state
/// stops being finite.
TimeSeries integrate(const FreeSystem& fs, const Loading& loads, const Eigen::VectorXd& q0,
                     const Eigen::VectorXd& v0, const IntegrateOptions& opts);

}  // namespace cosserat
