#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace erfeo {

using cplx = std::complex<double>;

// H = sum_ij A_ij a_i^dag a_j + (1/2) sum_ij (B_ij a_i^dag a_j^dag + conj(B_ij) a_i a_j), in THz.
// A is Hermitian and B symmetric by construction.
class BosonicQuadratic {
public:
    explicit BosonicQuadratic(int n);

    int size() const { return n_; }
    void set_frequency(int i, double w);
    // coef (a_i^dag + s_i a_i)(a_j^dag + s_j a_j) for i != j with s = +-1;
    // Hermitian iff conj(coef) = s_i s_j coef.
    void add_coupling(int i, int j, cplx coef, int s_i, int s_j);
    // Lambda/2 (a_i^dag a_i^dag + a_i a_i), Lambda real.
    void add_squeezing(int i, double lambda);

    const Eigen::MatrixXcd& A() const { return A_; }
    const Eigen::MatrixXcd& B() const { return B_; }

private:
    int n_;
    Eigen::MatrixXcd A_;
    Eigen::MatrixXcd B_;
};

struct NormalModes {
    std::vector<double> frequencies;      // ascending, THz
    // Column k holds (u, v) of the mode with frequency[k].
    Eigen::MatrixXcd vectors;
};

// Throws InstabilityError if [[A, B], [B*, A*]] is not positive definite.
NormalModes bogoliubov_modes(const BosonicQuadratic& q);
std::vector<double> bogoliubov_frequencies(const BosonicQuadratic& q);

}  // namespace erfeo
