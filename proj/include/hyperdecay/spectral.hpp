#ifndef HYPERDECAY_SPECTRAL_HPP
#define HYPERDECAY_SPECTRAL_HPP

// Rest-mass spectral densities sigma(mu). One density describes every
// single-parent state of a species, whatever its momentum or hyperplane.

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hyperdecay {

/// Lorentzian (Gamma / 2pi) / ((mu - mu0)^2 + Gamma^2 / 4) on the whole
/// real line. Normalized by construction; no finite positive moments.
struct BreitWignerFullLine {
  double mu0;
  double gamma;
};

/// Lorentzian restricted to [mu_min, mu_max] and rescaled by `norm` so that
/// it integrates to one.
struct BreitWignerTruncated {
  double mu0;
  double gamma;
  double mu_min;
  double mu_max;
  double norm;
};

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant of samples,
/// multiplied by `scale`.
struct TabulatedDensity {
  std::vector<double> mu;
  std::vector<double> values;
  std::vector<double> slopes;
  double scale = 1.0;
};

/// The stable limit. Symbolic only: it has no density value.
struct PointMass {
  double mu0;
};

struct Support {
  double lo;
  double hi;
  bool contains(double mu) const { return mu >= lo && mu <= hi; }
  double width() const { return hi - lo; }
};

class SpectralDensity {
 public:
  using Model = std::variant<BreitWignerFullLine, BreitWignerTruncated,
                             TabulatedDensity, PointMass>;

  static constexpr double kDefaultWindow = 50.0;

  static SpectralDensity breit_wigner(double mu0, double gamma);
  /// Window [max(0, mu0 - w Gamma), mu0 + w Gamma], renormalized.
  static SpectralDensity breit_wigner_truncated(double mu0, double gamma,
                                                double window = kDefaultWindow);
  static SpectralDensity breit_wigner_truncated(double mu0, double gamma,
                                                double mu_min, double mu_max);
  /// Raw samples; call normalize() to obtain unit total probability.
  static SpectralDensity tabulated(std::vector<double> mu,
                                   std::vector<double> weights);
  static SpectralDensity point_mass(double mu0);
  /// Two-column text file (mu, weight); '#' starts a comment line. The
  /// result is normalized.
  static SpectralDensity load_tabulated(const std::string& path);

  const Model& model() const { return model_; }

  bool is_point_mass() const {
    return std::holds_alternative<PointMass>(model_);
  }
  bool is_full_line() const {
    return std::holds_alternative<BreitWignerFullLine>(model_);
  }

  /// Density value; zero outside the support. Throws for PointMass.
  double operator()(double mu) const;

  Support support() const;

  /// Peak or nominal mass: mu0 for the Breit-Wigner and point-mass models,
  /// the sample of largest weight for tabulated data.
  double reference_mass() const;

  /// Width parameter (Gamma) where the model has one.
  std::optional<double> width() const;

  /// Points inside the support where the density changes character; used to
  /// seed quadrature panels.
  std::vector<double> breakpoints() const;

  /// Integral of the (current) density over its support.
  double total_mass() const;

 private:
  friend SpectralDensity normalize(const SpectralDensity& sigma);
  explicit SpectralDensity(Model m) : model_(std::move(m)) {}
  Model model_;
};

double density(const SpectralDensity& sigma, double mu);

/// Rescales to unit total probability. Identity for the full-line and
/// point-mass models, which are normalized by definition.
SpectralDensity normalize(const SpectralDensity& sigma);

/// Integral of sigma(mu) mu^k. Throws DomainError where it diverges:
/// k >= 1 on the full line, k < 0 when the support reaches mu = 0.
double moment(const SpectralDensity& sigma, int k);

/// Integral of sigma(mu)^2; 1/(pi Gamma) for the full-line Breit-Wigner.
double integral_of_square(const SpectralDensity& sigma);

/// |r(mu^2)| = sqrt(sigma(mu) / 2 mu), the weight of the 4-momentum
/// expansion of a momentum eigenstate.
double r_weight(const SpectralDensity& sigma, double mu);

struct SpectralMoments {
  double mean_square;   ///< <P^2>
  double spread;        ///< Delta(P^2) = sqrt(<P^4> - <P^2>^2)
  std::optional<double> inverse_cube;  ///< <(P^2)^(-3/2)>, if convergent
};

SpectralMoments spectral_moments(const SpectralDensity& sigma);

}  // namespace hyperdecay

#endif  // HYPERDECAY_SPECTRAL_HPP
