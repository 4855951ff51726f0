#include "ncclark/linalg.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>

namespace ncclark {

MatrixTuple::MatrixTuple(std::vector<Mat> mats) : mats_(std::move(mats))
{
    if (mats_.empty())
        throw ArityError("matrix tuple needs at least one matrix");
    const auto n = mats_[0].rows();
    for (const auto& m : mats_) {
        if (m.rows() != n || m.cols() != n)
            throw ArityError(fmt::format("tuple entries must all be {}x{}", n, n));
    }
}

MatrixTuple MatrixTuple::zeros(int d, int n)
{
    return MatrixTuple(std::vector<Mat>(d, Mat::Zero(n, n)));
}

Mat kron(const Mat& a, const Mat& b)
{
    if (a.size() == 0 || b.size() == 0)
        return Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    return Eigen::kroneckerProduct(a, b).eval();
}

Mat identity(int n) { return Mat::Identity(n, n); }

double op_norm(const Mat& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

double cond_estimate(const Mat& m)
{
    if (m.size() == 0)
        return 1.0;
    if (m.cwiseAbs().maxCoeff() < 1e-14)
        return std::numeric_limits<double>::infinity();
    Eigen::PartialPivLU<Mat> lu(m);
    double rc = lu.rcond();
    if (!(rc > 0.0))
        return std::numeric_limits<double>::infinity();
    return 1.0 / rc;
}

Mat inverse_checked(const Mat& m, const std::string& what, double max_cond)
{
    return solve_checked(m, Mat::Identity(m.rows(), m.cols()), what, max_cond);
}

Mat solve_checked(const Mat& m, const Mat& rhs, const std::string& what, double max_cond)
{
    if (m.rows() != m.cols() || m.rows() != rhs.rows())
        throw ArityError(fmt::format("solve: {} has incompatible size", what));
    if (m.size() == 0)
        return rhs;
    double c = cond_estimate(m);
    if (!(c <= max_cond))
        throw DomainError(fmt::format("{} is singular (condition estimate {:.3g})", what, c), c);
    Eigen::PartialPivLU<Mat> lu(m);
    return lu.solve(rhs);
}

cplx det(const Mat& m)
{
    if (m.size() == 0)
        return 1.0;
    Eigen::PartialPivLU<Mat> lu(m);
    return lu.determinant();
}

Mat orth(const Mat& m, double reltol, double abstol)
{
    if (m.cols() == 0 || m.rows() == 0)
        return Mat::Zero(m.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || !(s(0) > 0.0))
        return Mat::Zero(m.rows(), 0);
    int r = 0;
    while (r < s.size() && s(r) > reltol * s(0) && s(r) > abstol)
        ++r;
    return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& m, double abstol)
{
    const int n = static_cast<int>(m.cols());
    if (n == 0)
        return Mat::Zero(0, 0);
    if (m.rows() == 0)
        return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > abstol)
        ++r;
    return svd.matrixV().rightCols(n - r);
}

int numerical_rank(const Mat& m, double reltol)
{
    return static_cast<int>(orth(m, reltol).cols());
}

Mat psd_sqrt(const Mat& p)
{
    Mat h = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat psd_inv_sqrt(const Mat& p)
{
    Mat h = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.size() > 0 && !(ev.minCoeff() > 0.0))
        throw DomainError("psd_inv_sqrt: matrix is not positive definite",
                          std::numeric_limits<double>::infinity());
    ev = ev.cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

bool valid_word(const Word& w, int d)
{
    for (int l : w)
        if (l < 1 || l > d)
            return false;
    return true;
}

Mat word_eval(const MatrixTuple& a, const Word& w)
{
    Mat r = identity(a.n());
    for (int l : w) {
        if (l < 1 || l > a.d())
            throw ArityError(fmt::format("letter {} out of range 1..{}", l, a.d()));
        r = r * a[l - 1];
    }
    return r;
}

Word reverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::vector<Word> words_of_length(int d, int len)
{
    std::vector<Word> out;
    Word w(len, 1);
    if (len == 0) {
        out.push_back(w);
        return out;
    }
    for (;;) {
        out.push_back(w);
        int i = len - 1;
        while (i >= 0 && w[i] == d) {
            w[i] = 1;
            --i;
        }
        if (i < 0)
            break;
        ++w[i];
    }
    return out;
}

std::vector<Word> words_up_to(int d, int maxlen)
{
    std::vector<Word> out;
    for (int k = 0; k <= maxlen; ++k) {
        auto ws = words_of_length(d, k);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

MatrixTuple transpose_tuple(const MatrixTuple& a)
{
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(m.transpose());
    return MatrixTuple(std::move(ms));
}

MatrixTuple adjoint_tuple(const MatrixTuple& a)
{
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(m.adjoint());
    return MatrixTuple(std::move(ms));
}

MatrixTuple conjugate_tuple(const MatrixTuple& a)
{
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(m.conjugate());
    return MatrixTuple(std::move(ms));
}

MatrixTuple scale_tuple(const MatrixTuple& a, cplx s)
{
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(s * m);
    return MatrixTuple(std::move(ms));
}

MatrixTuple similarity_transform(const MatrixTuple& a, const Mat& s)
{
    Mat si = inverse_checked(s, "similarity");
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(s * m * si);
    return MatrixTuple(std::move(ms));
}

MatrixTuple compress(const MatrixTuple& a, const Mat& q)
{
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(q.adjoint() * m * q);
    return MatrixTuple(std::move(ms));
}

MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b)
{
    if (a.d() != b.d())
        throw ArityError("direct_sum: arity mismatch");
    const int n = a.n() + b.n();
    std::vector<Mat> ms;
    for (int j = 0; j < a.d(); ++j) {
        Mat m = Mat::Zero(n, n);
        m.topLeftCorner(a.n(), a.n()) = a[j];
        m.bottomRightCorner(b.n(), b.n()) = b[j];
        ms.push_back(m);
    }
    return MatrixTuple(std::move(ms));
}

Mat pencil(const MatrixTuple& a, const MatrixTuple& z)
{
    if (a.d() != z.d())
        throw ArityError(fmt::format("pencil: arity {} vs {}", a.d(), z.d()));
    const int N = a.n() * z.n();
    Mat l = Mat::Identity(N, N);
    for (int j = 0; j < a.d(); ++j)
        l -= kron(a[j], z[j]);
    return l;
}

Mat pencil_swapped(const MatrixTuple& a, const MatrixTuple& z)
{
    if (a.d() != z.d())
        throw ArityError(fmt::format("pencil: arity {} vs {}", a.d(), z.d()));
    const int N = a.n() * z.n();
    Mat l = Mat::Identity(N, N);
    for (int j = 0; j < a.d(); ++j)
        l -= kron(z[j], a[j]);
    return l;
}

Mat pencil_solve(const MatrixTuple& a, const MatrixTuple& z, const Mat& rhs)
{
    return solve_checked(pencil(a, z), rhs, "pencil");
}

Mat cp_apply(const MatrixTuple& a, const Mat& p)
{
    if (p.rows() != a.n() || p.cols() != a.n())
        throw ArityError("cp_apply: size mismatch");
    Mat r = Mat::Zero(a.n(), a.n());
    for (const auto& m : a.mats())
        r += m * p * m.adjoint();
    return r;
}

Mat cp_apply_adjoint(const MatrixTuple& a, const Mat& p)
{
    if (p.rows() != a.n() || p.cols() != a.n())
        throw ArityError("cp_apply: size mismatch");
    Mat r = Mat::Zero(a.n(), a.n());
    for (const auto& m : a.mats())
        r += m.adjoint() * p * m;
    return r;
}

Vec vec(const Mat& m)
{
    Vec v(m.size());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        v.segment(j * m.rows(), m.rows()) = m.col(j);
    return v;
}

Mat unvec(const Vec& v, int rows, int cols)
{
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        m.col(j) = v.segment(static_cast<Eigen::Index>(j) * rows, rows);
    return m;
}

Mat matrize(const std::vector<std::pair<Mat, Mat>>& terms)
{
    if (terms.empty())
        return Mat();
    Mat r = kron(terms[0].second.transpose(), terms[0].first);
    for (std::size_t i = 1; i < terms.size(); ++i)
        r += kron(terms[i].second.transpose(), terms[i].first);
    return r;
}

Mat matrize_ad(const MatrixTuple& a)
{
    const int n = a.n();
    Mat r = Mat::Zero(n * n, n * n);
    for (const auto& m : a.mats())
        r += kron(m.conjugate(), m);
    return r;
}

double joint_spectral_radius(const MatrixTuple& a)
{
    if (a.n() == 0)
        return 0.0;
    Eigen::ComplexEigenSolver<Mat> es(matrize_ad(a), false);
    double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    return std::sqrt(rho);
}

double beurling_iterate(const MatrixTuple& a, int k)
{
    Mat p = identity(a.n());
    double logsum = 0.0;
    for (int i = 0; i < k; ++i) {
        p = cp_apply(a, p);
        double nrm = op_norm(p);
        if (nrm == 0.0)
            return 0.0;
        logsum += std::log(nrm);
        p /= nrm;
    }
    return std::exp(logsum / (2.0 * k));
}

namespace {

Mat row_gram(const MatrixTuple& a)
{
    Mat g = Mat::Zero(a.n(), a.n());
    for (const auto& m : a.mats())
        g += m * m.adjoint();
    return g;
}

Mat col_gram(const MatrixTuple& a)
{
    Mat g = Mat::Zero(a.n(), a.n());
    for (const auto& m : a.mats())
        g += m.adjoint() * m;
    return g;
}

double min_eig(const Mat& h)
{
    if (h.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

} // namespace

double row_norm(const MatrixTuple& a) { return std::sqrt(op_norm(row_gram(a))); }
double col_norm(const MatrixTuple& a) { return std::sqrt(op_norm(col_gram(a))); }

bool is_row_contraction(const MatrixTuple& a, double tol)
{
    return min_eig(identity(a.n()) - row_gram(a)) >= -tol;
}

bool is_strict_row_contraction(const MatrixTuple& a, double tol)
{
    return min_eig(identity(a.n()) - row_gram(a)) > tol;
}

bool is_row_coisometry(const MatrixTuple& a, double tol)
{
    return op_norm(identity(a.n()) - row_gram(a)) <= tol;
}

bool is_column_isometry(const MatrixTuple& a, double tol)
{
    return op_norm(identity(a.n()) - col_gram(a)) <= tol;
}

bool is_pure(const MatrixTuple& a, double tol) { return joint_spectral_radius(a) < 1.0 - tol; }

SimilarityResult similarity_to_strict_row_contraction(const MatrixTuple& a, double rho,
                                                      double tol, int max_terms)
{
    if (!(rho > 0.0))
        throw PreconditionError("similarity: rho must be positive");
    double s = joint_spectral_radius(a);
    if (s >= rho * (1.0 - kDefaultTol))
        throw PreconditionError(
            fmt::format("similarity: spr {:.6g} is not below rho {:.6g}", s, rho));
    const int n = a.n();
    Mat p = identity(n);
    Mat term = identity(n);
    const double r2 = 1.0 / (rho * rho);
    int k = 0;
    for (;;) {
        ++k;
        if (k > max_terms)
            throw IterationError(fmt::format("similarity series not converged after {} terms",
                                             max_terms));
        term = r2 * cp_apply(a, term);
        p += term;
        if (op_norm(term) < tol * op_norm(p))
            break;
    }
    SimilarityResult out;
    out.s = psd_inv_sqrt(p);
    Mat si = psd_sqrt(p);
    std::vector<Mat> ms;
    for (const auto& m : a.mats())
        ms.push_back(out.s * m * si);
    out.scaled = MatrixTuple(std::move(ms));
    out.terms = k;
    return out;
}

} // namespace ncclark
