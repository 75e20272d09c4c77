#include "cosserat/system.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "cosserat/errors.hpp"

namespace cosserat {

Mesh Mesh::uniform(double length, int elements, const SectionProperties& sec) {
    if (!(length > 0.0)) throw ConfigurationError("rod length must be positive");
    if (elements < 1) throw ConfigurationError("mesh needs at least one element");
    Mesh m;
    const double h = length / elements;
    for (int i = 0; i <= elements; ++i) m.nodes.push_back(h * i);
    for (int i = 0; i < elements; ++i) m.elements.push_back({i, i + 1, sec, h});
    return m;
}

void Mesh::restrain(int node, int local_dof) {
    if (node < 0 || node >= node_count() || local_dof < 0 || local_dof >= kNodeDofs) {
        throw ConfigurationError("restraint refers to node " + std::to_string(node) + " dof " +
                                 std::to_string(local_dof) + " which does not exist");
    }
    const int g = global_dof(node, local_dof);
    const auto it = std::lower_bound(restrained.begin(), restrained.end(), g);
    if (it == restrained.end() || *it != g) restrained.insert(it, g);
}

void Mesh::clamp(int node) {
    for (int d = 0; d < kNodeDofs; ++d) restrain(node, d);
}

void Mesh::validate() const {
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) throw ConfigurationError("node coordinates must increase");
    }
    for (const MeshElement& e : elements) {
        if (e.node_a < 0 || e.node_b >= node_count() || e.node_b != e.node_a + 1) {
            throw ConfigurationError("elements must join consecutive nodes");
        }
        if (std::abs(nodes[static_cast<std::size_t>(e.node_b)] - nodes[static_cast<std::size_t>(e.node_a)] -
                     e.length) > 1e-12 * e.length) {
            throw ConfigurationError("element length does not match its nodes");
        }
    }
    for (int g : restrained) {
        if (g < 0 || g >= dof_count()) throw ConfigurationError("restrained DOF out of range");
    }
}

GlobalSystem::GlobalSystem(Mesh mesh, std::vector<ElementOperators> element_ops)
    : mesh_(std::move(mesh)), ops_(std::move(element_ops)) {
    mesh_.validate();
    if (ops_.size() != mesh_.elements.size()) throw UsageError("one operator set per element is required");
    const int n = dof_count();
    M_ = Eigen::MatrixXd::Zero(n, n);
    K_ = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < ops_.size(); ++e) {
        const int base = kNodeDofs * mesh_.elements[e].node_a;
        M_.block<12, 12>(base, base) += ops_[e].M;
        K_.block<12, 12>(base, base) += ops_[e].K;
        nonlinear_ = nonlinear_ || ops_[e].nonlinear();
        const auto same = std::find_if(groups_.begin(), groups_.end(), [&](const Group& g) {
            const ElementOperators& r = ops_[g.representative];
            return r.l == ops_[e].l && r.section == ops_[e].section &&
                   r.g_terms.size() == ops_[e].g_terms.size();
        });
        if (same != groups_.end()) {
            same->bases.push_back(base);
        } else {
            groups_.push_back({e, {base}});
        }
    }
}

Vec12 GlobalSystem::gather(const Eigen::VectorXd& q, int e) const {
    return q.segment<12>(kNodeDofs * mesh_.elements[static_cast<std::size_t>(e)].node_a);
}

Eigen::VectorXd GlobalSystem::nonlinear_force(const Eigen::VectorXd& q) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dof_count());
    if (!nonlinear_) return g;
    using Block = Eigen::Matrix<double, 12, Eigen::Dynamic, Eigen::RowMajor>;
    for (const Group& grp : groups_) {
        const ElementOperators& ops = ops_[grp.representative];
        const Eigen::Index n = static_cast<Eigen::Index>(grp.bases.size());
        Block Q(12, n);
        Block G = Block::Zero(12, n);
        for (Eigen::Index k = 0; k < n; ++k) Q.col(k) = q.segment<12>(grp.bases[static_cast<std::size_t>(k)]);
        const std::size_t split = ops.g_quadratic_count;
        for (std::size_t i = 0; i < ops.g_terms.size(); ++i) {
            const ForceTerm& t = ops.g_terms[i];
            if (i < split) {
                G.row(t.row) += t.c * Q.row(t.v[0]).cwiseProduct(Q.row(t.v[1]));
            } else {
                G.row(t.row) += t.c * Q.row(t.v[0]).cwiseProduct(Q.row(t.v[1])).cwiseProduct(Q.row(t.v[2]));
            }
        }
        for (Eigen::Index k = 0; k < n; ++k) g.segment<12>(grp.bases[static_cast<std::size_t>(k)]) += G.col(k);
    }
    return g;
}

Eigen::MatrixXd GlobalSystem::nonlinear_jacobian(const Eigen::VectorXd& q) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dof_count(), dof_count());
    if (!nonlinear_) return J;
    for (std::size_t e = 0; e < ops_.size(); ++e) {
        const int base = kNodeDofs * mesh_.elements[e].node_a;
        J.block<12, 12>(base, base) += cosserat::nonlinear_jacobian(ops_[e], gather(q, static_cast<int>(e)));
    }
    return J;
}

double GlobalSystem::nonlinear_potential(const Eigen::VectorXd& q) const {
    double V = 0.0;
    for (std::size_t e = 0; e < ops_.size(); ++e) {
        V += cosserat::nonlinear_potential(ops_[e], gather(q, static_cast<int>(e)));
    }
    return V;
}

GlobalSystem build_system(const Mesh& mesh, const BuildOptions& opts) {
    std::vector<ElementOperators> ops;
    std::vector<std::size_t> first;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const MeshElement& me = mesh.elements[e];
        const auto same = std::find_if(first.begin(), first.end(), [&](std::size_t k) {
            const MeshElement& o = mesh.elements[k];
            return o.length == me.length && o.section == me.section;
        });
        if (same != first.end()) {
            ops.push_back(ops[*same]);
        } else {
            first.push_back(e);
            ops.push_back(build_element(me.section, me.length, opts));
        }
    }
    return GlobalSystem(mesh, std::move(ops));
}

FreeSystem::FreeSystem(const GlobalSystem& sys) : sys_(&sys) {
    const int n = sys.dof_count();
    restrained_ = sys.mesh().restrained;
    index_.assign(static_cast<std::size_t>(n), -1);
    for (int g = 0; g < n; ++g) {
        if (!std::binary_search(restrained_.begin(), restrained_.end(), g)) {
            index_[static_cast<std::size_t>(g)] = static_cast<int>(free_.size());
            free_.push_back(g);
        }
    }
    if (free_.empty()) throw ConfigurationError("every DOF is restrained");
    const int nf = size();
    const int nr = static_cast<int>(restrained_.size());
    M_.resize(nf, nf);
    K_.resize(nf, nf);
    M_rf_.resize(nr, nf);
    K_rf_.resize(nr, nf);
    for (int j = 0; j < nf; ++j) {
        for (int i = 0; i < nf; ++i) {
            M_(i, j) = sys.M()(free_[static_cast<std::size_t>(i)], free_[static_cast<std::size_t>(j)]);
            K_(i, j) = sys.K()(free_[static_cast<std::size_t>(i)], free_[static_cast<std::size_t>(j)]);
        }
        for (int r = 0; r < nr; ++r) {
            M_rf_(r, j) = sys.M()(restrained_[static_cast<std::size_t>(r)], free_[static_cast<std::size_t>(j)]);
            K_rf_(r, j) = sys.K()(restrained_[static_cast<std::size_t>(r)], free_[static_cast<std::size_t>(j)]);
        }
    }
    llt_.compute(M_);
    if (llt_.info() != Eigen::Success) {
        throw ConfigurationError("mass matrix of the free DOFs is not positive definite (insufficient constraints)");
    }
}

Eigen::VectorXd FreeSystem::expand(const Eigen::VectorXd& qf) const {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(sys_->dof_count());
    for (int i = 0; i < size(); ++i) q(free_[static_cast<std::size_t>(i)]) = qf(i);
    return q;
}

Eigen::VectorXd FreeSystem::restrict(const Eigen::VectorXd& full) const {
    Eigen::VectorXd r(size());
    for (int i = 0; i < size(); ++i) r(i) = full(free_[static_cast<std::size_t>(i)]);
    return r;
}

int FreeSystem::free_index(int global) const {
    if (global < 0 || global >= static_cast<int>(index_.size())) return -1;
    return index_[static_cast<std::size_t>(global)];
}

Eigen::VectorXd FreeSystem::nonlinear_force(const Eigen::VectorXd& qf) const {
    if (!sys_->nonlinear()) return Eigen::VectorXd::Zero(size());
    return restrict(sys_->nonlinear_force(expand(qf)));
}

Eigen::MatrixXd FreeSystem::nonlinear_jacobian(const Eigen::VectorXd& qf) const {
    const Eigen::MatrixXd J = sys_->nonlinear_jacobian(expand(qf));
    Eigen::MatrixXd out(size(), size());
    for (int i = 0; i < size(); ++i) {
        for (int j = 0; j < size(); ++j) out(i, j) = J(free_[static_cast<std::size_t>(i)], free_[static_cast<std::size_t>(j)]);
    }
    return out;
}

Eigen::VectorXd solve_static(const FreeSystem& fs, const Eigen::VectorXd& f, int max_iterations) {
    if (f.size() != fs.size()) throw UsageError("load vector has the wrong dimension");
    const Eigen::LDLT<Eigen::MatrixXd> kfac(fs.K());
    if (kfac.info() != Eigen::Success) throw ConfigurationError("stiffness factorization failed");
    Eigen::VectorXd q = kfac.solve(f);
    if (!fs.system().nonlinear()) return q;
    const double fscale = std::max(f.norm(), 1e-300);
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd r = fs.K() * q + fs.nonlinear_force(q) - f;
        if (r.norm() <= 1e-12 * fscale) return q;
        const Eigen::MatrixXd J = fs.K() + fs.nonlinear_jacobian(q);
        const Eigen::VectorXd dq = J.partialPivLu().solve(r);
        q -= dq;
        if (!q.allFinite()) break;
        if (dq.norm() <= 1e-14 * q.norm()) return q;
    }
    throw DomainError("static equilibrium iteration did not converge");
}

double FreeSystem::energy(const Eigen::VectorXd& qf, const Eigen::VectorXd& vf) const {
    return 0.5 * vf.dot(M_ * vf) + 0.5 * qf.dot(K_ * qf) + sys_->nonlinear_potential(expand(qf));
}

Eigen::VectorXd FreeSystem::reactions(const Eigen::VectorXd& qf, const Eigen::VectorXd& af,
                                      const Eigen::VectorXd& f_full) const {
    Eigen::VectorXd R = M_rf_ * af + K_rf_ * qf;
    const Eigen::VectorXd g = sys_->nonlinear_force(expand(qf));
    for (std::size_t r = 0; r < restrained_.size(); ++r) {
        const int gdof = restrained_[r];
        R(static_cast<Eigen::Index>(r)) += g(gdof) - (f_full.size() ? f_full(gdof) : 0.0);
    }
    return R;
}

std::string classify_mode(const FreeSystem& fs, const Eigen::VectorXd& shape) {
    static const std::array<int, kNodeDofs> family{0, 1, 2, 1, 0, 3};
    static const std::array<const char*, 4> names{"e1-e3", "e2-e3", "axial", "torsion"};
    const Eigen::VectorXd mx = fs.M() * shape;
    std::array<double, 4> share{};
    double total = 0.0;
    for (int i = 0; i < fs.size(); ++i) {
        const double w = std::abs(shape(i) * mx(i));
        share[static_cast<std::size_t>(family[static_cast<std::size_t>(fs.free_dofs()[static_cast<std::size_t>(i)] % kNodeDofs)])] += w;
        total += w;
    }
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return share[static_cast<std::size_t>(a)] > share[static_cast<std::size_t>(b)]; });
    const double top = share[static_cast<std::size_t>(order[0])] / total;
    const double second = share[static_cast<std::size_t>(order[1])] / total;
    return top - second >= 0.10 ? names[static_cast<std::size_t>(order[0])] : "coupled";
}

std::vector<Mode> modal(const FreeSystem& fs) {
    const auto& llt = fs.mass_factor();
    const Eigen::MatrixXd L = llt.matrixL();
    // A = L^-1 K L^-T
    Eigen::MatrixXd A = llt.matrixL().solve(fs.K());
    A = llt.matrixL().solve(A.transpose()).transpose();
    A = 0.5 * (A + A.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw ConfigurationError("eigenvalue solver failed");
    std::vector<Mode> modes;
    for (int i = 0; i < A.rows(); ++i) {
        Mode m;
        const double lam = es.eigenvalues()(i);
        m.omega = std::sqrt(std::max(lam, 0.0));
        m.shape = L.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors().col(i));
        m.plane = classify_mode(fs, m.shape);
        modes.push_back(std::move(m));
    }
    return modes;
}

std::vector<double> cbt_roots(int count) {
    const double pi = std::acos(-1.0);
    auto f = [](double x) { return std::cos(x) + 1.0 / std::cosh(x); };
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
    std::vector<double> roots;
    for (int k = 1; k <= count; ++k) {
        const auto [a, b] = boost::math::tools::bisect(f, (k - 1) * pi, k * pi, tol);
        roots.push_back(0.5 * (a + b));
    }
    return roots;
}

std::vector<double> cbt_frequencies(double length, double EI, double rhoA, int count) {
    if (!(length > 0.0) || !(EI > 0.0) || !(rhoA > 0.0)) throw DomainError("beam parameters must be positive");
    std::vector<double> w;
    for (double r : cbt_roots(count)) w.push_back(r * r * std::sqrt(EI / (rhoA * std::pow(length, 4))));
    return w;
}

double PointLoad::value(double t) const {
    const double arg = frequency * t + phase;
    return amplitude * (kind == Waveform::kCos ? std::cos(arg) : std::sin(arg));
}

Eigen::VectorXd Loading::full(double t, int dofs) const {
    Eigen::VectorXd f = constant.size() == dofs ? constant : Eigen::VectorXd::Zero(dofs);
    for (const PointLoad& p : point) f(global_dof(p.node, p.dof)) += p.value(t);
    return f;
}

bool Loading::empty() const {
    return point.empty() && (constant.size() == 0 || constant.isZero(0.0));
}

Eigen::VectorXd uniform_distributed_loads(const Mesh& mesh, const Vec3& force, const Vec3& torque) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.dof_count());
    for (const MeshElement& e : mesh.elements) {
        const ShapeSolution sh = jet_shape(e.section, e.length, 1);
        const Vec12 fe = equivalent_nodal_loads(
            sh, [&](double) { return force; }, [&](double) { return torque; });
        f.segment<12>(kNodeDofs * e.node_a) += fe;
    }
    return f;
}

}  // namespace cosserat
