#include "rmtlab/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace rmtlab {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("ensemble spec error: ") + what);
}

}  // namespace

std::string model_name(ModelKind m) {
  return m == ModelKind::kDeformedGoe ? "deformed_goe" : "spiked";
}

std::optional<ModelKind> model_from_name(const std::string& name) {
  if (name == "deformed_goe" || name == "goe") return ModelKind::kDeformedGoe;
  if (name == "spiked" || name == "spiked_population") return ModelKind::kSpikedPopulation;
  return std::nullopt;
}

void EnsembleSpec::validate() const {
  require(n >= 1, "n must be at least 1");
  for (std::size_t k = 0; k < spikes.size(); ++k) {
    require(spikes[k] > 0.0, "spikes must be strictly positive");
    if (k > 0) require(spikes[k] <= spikes[k - 1], "spikes must be non-increasing");
  }
  if (model == ModelKind::kDeformedGoe) {
    require(sigma > 0.0, "sigma must be positive");
    require(static_cast<int>(spikes.size()) <= n, "rank r must not exceed n");
  } else {
    require(p >= 1, "p must be at least 1");
    require(static_cast<int>(spikes.size()) <= p, "r+s must not exceed p");
  }
}

int EnsembleSpec::r() const {
  if (model == ModelKind::kDeformedGoe) return static_cast<int>(spikes.size());
  int count = 0;
  for (double v : spikes) count += (v > 1.0) ? 1 : 0;
  return count;
}

int EnsembleSpec::s() const {
  if (model == ModelKind::kDeformedGoe) return 0;
  int count = 0;
  for (double v : spikes) count += (v < 1.0) ? 1 : 0;
  return count;
}

SymMatrix sample_goe(int n, double sigma, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_goe: n must be at least 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_goe: sigma must be positive");
  const double off_sd = sigma / std::sqrt(static_cast<double>(n));
  const double diag_sd = off_sd * std::sqrt(2.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = diag_sd * stream.next_gaussian();
    for (int j = i + 1; j < n; ++j) {
      g(i, j) = off_sd * stream.next_gaussian();
    }
  }
  return SymMatrix(std::move(g));  // mirrors the upper triangle
}

SampleDraw sample_deformed(const EnsembleSpec& spec, std::uint64_t replicate) {
  spec.validate();
  if (spec.model != ModelKind::kDeformedGoe) {
    throw std::invalid_argument("sample_deformed: spec must describe a deformed GOE");
  }
  RngStream stream = derive_stream(spec.seed, replicate);
  SymMatrix g = sample_goe(spec.n, spec.sigma, stream);
  Eigen::MatrixXd a = g.entries();
  for (std::size_t k = 0; k < spec.spikes.size(); ++k) {
    a(static_cast<int>(k), static_cast<int>(k)) += spec.spikes[k];
  }
  return SampleDraw{SymMatrix(std::move(a)), replicate, spec, std::nullopt};
}

SampleDraw sample_spiked(const EnsembleSpec& spec, std::uint64_t replicate,
                         bool keep_factor) {
  spec.validate();
  if (spec.model != ModelKind::kSpikedPopulation) {
    throw std::invalid_argument("sample_spiked: spec must describe a spiked population");
  }
  RngStream stream = derive_stream(spec.seed, replicate);
  Eigen::MatrixXd g(spec.p, spec.n);
  for (int i = 0; i < spec.p; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      g(i, j) = stream.next_gaussian();
    }
  }
  // Rows of Sigma^{1/2} G: row i scaled by theta_i for the spiked rows.
  Eigen::MatrixXd scaled = g;
  for (std::size_t k = 0; k < spec.spikes.size(); ++k) {
    scaled.row(static_cast<int>(k)) *= std::sqrt(spec.spikes[k]);
  }
  Eigen::MatrixXd s(spec.p, spec.p);
  s.setZero();
  s.selfadjointView<Eigen::Upper>().rankUpdate(scaled, 1.0 / spec.n);
  SampleDraw out{SymMatrix(std::move(s)), replicate, spec, std::nullopt};
  if (keep_factor) out.factor = std::move(g);
  return out;
}

SampleDraw sample(const EnsembleSpec& spec, std::uint64_t replicate, bool keep_factor) {
  return spec.model == ModelKind::kDeformedGoe
             ? sample_deformed(spec, replicate)
             : sample_spiked(spec, replicate, keep_factor);
}

}  // namespace rmtlab
