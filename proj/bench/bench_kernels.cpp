// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "mottscope/eigensolver.hpp"
#include "mottscope/hamiltonian.hpp"
#include "mottscope/kernels.hpp"
#include "mottscope/scatter.hpp"
#include "mottscope/spectrum.hpp"

namespace ms = mottscope;

namespace {

ms::LatticeSpec lattice(int sites) {
  ms::LatticeSpec lat;
  lat.sites = sites;
  return lat;
}

struct Fixture {
  ms::FockBasis basis;
  ms::HamiltonianMatrix h;
  ms::SymmetricCsr csr;
  ms::Spectrum spectrum;
  Eigen::MatrixXd me;
  std::vector<double> excitation;

  explicit Fixture(int sites)
      : basis(sites, sites),
        h(ms::build_hamiltonian(basis, ms::InteractionSpec{10.0}, lattice(sites))),
        csr(ms::to_csr(h)),
        spectrum(ms::diagonalize(h)),
        me(ms::ground_matrix_elements(spectrum, basis, ms::Execution::serial)) {
    for (std::size_t n = 0; n < spectrum.dim(); ++n) excitation.push_back(spectrum.excitation_er(n));
  }
};

const Fixture& fixture() {
  static const Fixture f(7);
  return f;
}

ms::ChannelInputs channel_inputs() {
  const auto& f = fixture();
  const ms::ProbeSpec p;
  return {f.excitation, &f.me, ms::elastic_kappa(p), p.ein_er, ms::kDefaultLatticeDepth};
}

void BM_HoppingSerial(benchmark::State& st) {
  const ms::FockBasis basis(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(ms::kernels::serial::hopping_entries(basis));
}
void BM_HoppingParallel(benchmark::State& st) {
  const ms::FockBasis basis(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(ms::kernels::parallel::hopping_entries(basis));
}

void BM_MatvecSerial(benchmark::State& st) {
  const auto& f = fixture();
  std::vector<double> x(f.h.dim, 1.0), y(f.h.dim);
  for (auto _ : st) {
    ms::kernels::serial::matvec(f.h, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
void BM_MatvecParallel(benchmark::State& st) {
  const auto& f = fixture();
  std::vector<double> x(f.h.dim, 1.0), y(f.h.dim);
  for (auto _ : st) {
    ms::kernels::parallel::matvec(f.csr, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_MatrixElementsSerial(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(ms::kernels::serial::ground_matrix_elements(f.spectrum.vectors, f.basis));
}
void BM_MatrixElementsParallel(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st)
    benchmark::DoNotOptimize(ms::kernels::parallel::ground_matrix_elements(f.spectrum.vectors, f.basis));
}

void BM_ChannelTermsSerial(benchmark::State& st) {
  const auto in = channel_inputs();
  for (auto _ : st) benchmark::DoNotOptimize(ms::kernels::serial::inelastic_channel_terms(in));
}
void BM_ChannelTermsParallel(benchmark::State& st) {
  const auto in = channel_inputs();
  for (auto _ : st) benchmark::DoNotOptimize(ms::kernels::parallel::inelastic_channel_terms(in));
}

}  // namespace

BENCHMARK(BM_HoppingSerial)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HoppingParallel)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatvecSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MatvecParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MatrixElementsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatrixElementsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelTermsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelTermsParallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  ms::ensure_working_blas(argv);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
