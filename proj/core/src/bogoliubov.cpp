#include "erfeo/bogoliubov.hpp"

#include <algorithm>
#include <numeric>

#include "erfeo/errors.hpp"

namespace erfeo {

BosonicQuadratic::BosonicQuadratic(int n)
    : n_(n), A_(Eigen::MatrixXcd::Zero(n, n)), B_(Eigen::MatrixXcd::Zero(n, n)) {}

void BosonicQuadratic::set_frequency(int i, double w) { A_(i, i) = w; }

void BosonicQuadratic::add_coupling(int i, int j, cplx coef, int s_i, int s_j) {
    if (i == j) throw PreconditionError("add_coupling needs two distinct modes");
    if (std::abs(std::conj(coef) - double(s_i * s_j) * coef) > 1e-12 * (1.0 + std::abs(coef)))
        throw PreconditionError("coupling term is not Hermitian");
    A_(i, j) += coef * double(s_j);
    A_(j, i) += coef * double(s_i);
    B_(i, j) += coef;
    B_(j, i) += coef;
}

void BosonicQuadratic::add_squeezing(int i, double lambda) { B_(i, i) += lambda; }

NormalModes bogoliubov_modes(const BosonicQuadratic& q) {
    const int n = q.size();
    const Eigen::MatrixXcd& A = q.A();
    const Eigen::MatrixXcd& B = q.B();

    Eigen::MatrixXcd M(2 * n, 2 * n);
    M << A, B, B.conjugate(), A.conjugate();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> pd(M, Eigen::EigenvaluesOnly);
    if (pd.eigenvalues().minCoeff() <= 0.0)
        throw InstabilityError("bosonic quadratic form is not positive definite");

    Eigen::MatrixXcd D(2 * n, 2 * n);
    D << A, B, -B.conjugate(), -A.conjugate();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(D);
    const auto& ev = es.eigenvalues();

    std::vector<int> pos;
    for (int k = 0; k < 2 * n; ++k)
        if (ev[k].real() > 0.0) pos.push_back(k);
    std::sort(pos.begin(), pos.end(), [&](int a, int b) { return ev[a].real() < ev[b].real(); });
    pos.resize(std::min<std::size_t>(pos.size(), n));

    NormalModes out;
    out.vectors.resize(2 * n, static_cast<Eigen::Index>(pos.size()));
    for (std::size_t k = 0; k < pos.size(); ++k) {
        out.frequencies.push_back(ev[pos[k]].real());
        out.vectors.col(k) = es.eigenvectors().col(pos[k]);
    }
    return out;
}

std::vector<double> bogoliubov_frequencies(const BosonicQuadratic& q) { return bogoliubov_modes(q).frequencies; }

}  // namespace erfeo
