#include "symqnn/cobyla.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace symqnn {

namespace {

struct BudgetExhausted {};

class Driver {
  public:
    Driver(const Objective& objective, const CobylaOptions& opts)
        : objective_(objective), opts_(opts) {}

    double eval(const Eigen::VectorXd& x) {
        if (result_.evaluations >= opts_.max_evaluations) throw BudgetExhausted{};
        std::vector<double> xv(x.data(), x.data() + x.size());
        const double f = objective_(xv);
        ++result_.evaluations;
        if (!std::isfinite(f))
            throw std::runtime_error("optimization aborted: objective returned " +
                                     std::to_string(f) + " at evaluation " +
                                     std::to_string(result_.evaluations));
        if (result_.history.empty() || f < result_.best_value) {
            result_.best_value = f;
            result_.best_point = std::move(xv);
        }
        result_.history.push_back(result_.best_value);
        return f;
    }

    CobylaResult result_;

  private:
    const Objective& objective_;
    const CobylaOptions& opts_;
};

/// The simplex held as an optimal vertex plus n offset directions, in the
/// shape of Powell's scheme: geometry is kept acceptable (no vertex too
/// far, no direction too thin) before a linear-model trust step is taken.
class Simplex {
  public:
    Simplex(Driver& driver, Eigen::VectorXd start, double rho)
        : driver_(driver), n_(static_cast<int>(start.size())) {
        base_ = std::move(start);
        f_base_ = driver_.eval(base_);
        directions_ = rho * Eigen::MatrixXd::Identity(n_, n_);
        f_vertex_.resize(n_);
        for (int j = 0; j < n_; ++j) {
            f_vertex_(j) = driver_.eval(base_ + directions_.col(j));
            pivot(j);
        }
    }

    enum class Outcome { Geometry, TrustGood, TrustFail, TrustStuck };

    /// One evaluation per call. TrustStuck means the failed trial could
    /// not refresh the simplex, so the next model would repeat it.
    Outcome iterate(double rho) {
        constexpr double kAlpha = 0.25;  // thinnest acceptable width, in rho
        constexpr double kBeta = 2.1;    // farthest acceptable vertex, in rho
        constexpr double kGamma = 0.5;   // length of a geometry step, in rho

        const Eigen::MatrixXd inverse = directions_.fullPivLu().inverse();
        if (!inverse.allFinite()) {
            rebuild(rho);
            return Outcome::Geometry;
        }
        const Eigen::VectorXd g =
            inverse.transpose() * (f_vertex_ - Eigen::VectorXd::Constant(n_, f_base_));

        // Geometry phase: fix the farthest vertex or the thinnest
        // direction before trusting the model.
        int drop = -1;
        double worst_distance = kBeta * rho;
        for (int j = 0; j < n_; ++j) {
            const double dist = directions_.col(j).norm();
            if (dist > worst_distance) {
                worst_distance = dist;
                drop = j;
            }
        }
        double thinnest = kAlpha * rho;
        if (drop < 0) {
            for (int j = 0; j < n_; ++j) {
                const double width = 1.0 / inverse.row(j).norm();
                if (width < thinnest) {
                    thinnest = width;
                    drop = j;
                }
            }
        }
        if (drop >= 0) {
            Eigen::VectorXd u = inverse.row(drop).transpose().normalized();
            if (g.dot(u) > 0.0) u = -u;  // probe the descent side
            const Eigen::VectorXd step = (kGamma * rho) * u;
            const double f_new = driver_.eval(base_ + step);
            directions_.col(drop) = step;
            f_vertex_(drop) = f_new;
            pivot(drop);
            return Outcome::Geometry;
        }

        // Trust-region step: the linear model's minimizer on the ball.
        const double gnorm = g.norm();
        if (!(gnorm > 1e-14)) return Outcome::TrustStuck;
        const Eigen::VectorXd step = -(rho / gnorm) * g;
        const double f_new = driver_.eval(base_ + step);
        const double actual = f_base_ - f_new;
        const double predicted = rho * gnorm;

        // Absorb the trial whenever that keeps the simplex volume up: an
        // unproductive point still refreshes the model for the next try.
        const Eigen::VectorXd coeffs = inverse * step;
        int j = 0;
        const double overlap = coeffs.cwiseAbs().maxCoeff(&j);
        bool absorbed = false;
        if (actual > 0.0 || overlap >= 1.0) {
            directions_.col(j) = step;
            f_vertex_(j) = f_new;
            pivot(j);
            absorbed = true;
        }
        if (actual > 0.1 * predicted) return Outcome::TrustGood;
        return absorbed ? Outcome::TrustFail : Outcome::TrustStuck;
    }

    void rebuild(double rho) {
        directions_ = rho * Eigen::MatrixXd::Identity(n_, n_);
        for (int j = 0; j < n_; ++j) {
            f_vertex_(j) = driver_.eval(base_ + directions_.col(j));
            pivot(j);
        }
    }

    void reset(Eigen::VectorXd start, double rho) {
        base_ = std::move(start);
        f_base_ = driver_.eval(base_);
        rebuild(rho);
    }

  private:
    /// Keeps the best point at the simplex origin.
    void pivot(int j) {
        if (f_vertex_(j) >= f_base_) return;
        const Eigen::VectorXd moved = directions_.col(j);
        base_ += moved;
        std::swap(f_base_, f_vertex_(j));
        for (int k = 0; k < n_; ++k) directions_.col(k) -= moved;
        directions_.col(j) = -moved;
    }

    Driver& driver_;
    int n_;
    Eigen::VectorXd base_;
    double f_base_ = 0.0;
    Eigen::MatrixXd directions_;  // column j: vertex j minus base
    Eigen::VectorXd f_vertex_;
};

}  // namespace

CobylaResult minimize_cobyla(const Objective& objective, const std::vector<double>& x0,
                             const CobylaOptions& opts) {
    if (opts.max_evaluations < 1) throw std::invalid_argument("need at least one evaluation");
    if (opts.tolerance <= 0.0 || opts.initial_step <= 0.0)
        throw std::invalid_argument("trust radii must be positive");

    const int n = static_cast<int>(x0.size());
    Driver driver(objective, opts);

    try {
        const Eigen::VectorXd start = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
        if (n == 0) {
            driver.eval(start);
            driver.result_.status = "converged (no free parameters)";
            return driver.result_;
        }

        driver.result_.status = "stopped on evaluation budget";
        Simplex simplex(driver, start, opts.initial_step);
        double rho = opts.initial_step;
        int stalls = 0;
        while (true) {
            if (rho < opts.tolerance) {
                if (driver.result_.evaluations >= opts.max_evaluations - n) {
                    driver.result_.status = "converged (trust radius below tolerance)";
                    break;
                }
                // Budget remains: restart from the incumbent at the full
                // radius so left-over evaluations keep searching.
                rho = opts.initial_step;
                stalls = 0;
                simplex.reset(
                    Eigen::Map<const Eigen::VectorXd>(driver.result_.best_point.data(), n), rho);
                continue;
            }
            switch (simplex.iterate(rho)) {
                case Simplex::Outcome::Geometry: break;
                case Simplex::Outcome::TrustGood: stalls = 0; break;
                case Simplex::Outcome::TrustFail:
                    if (++stalls >= 2) {
                        stalls = 0;
                        rho *= 0.5;
                    }
                    break;
                case Simplex::Outcome::TrustStuck:
                    stalls = 0;
                    rho *= 0.5;
                    break;
            }
        }
    } catch (const BudgetExhausted&) {
        driver.result_.status = "stopped on evaluation budget";
    }
    if (driver.result_.history.empty())
        throw std::runtime_error("optimizer made no evaluations");
    return driver.result_;
}

}  // namespace symqnn
