#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "avector/kernels.hpp"

using namespace avec::kernels;

namespace
{

struct Data
{
  explicit Data(std::size_t n)
  {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> d;
    for (int c = 0; c < 3; ++c)
    {
      k[c].resize(n);
      r[c].resize(n);
      f[c].resize(n);
      out[c].resize(n);
      rout[c].resize(n);
      for (std::size_t i = 0; i < n; ++i)
      {
        k[c][i] = d(rng);
        r[c][i] = d(rng);
        f[c][i] = Complex(d(rng), d(rng));
      }
    }
  }
  ConstReal3 ck() const { return {k[0], k[1], k[2]}; }
  ConstReal3 cr() const { return {r[0], r[1], r[2]}; }
  ConstModes3 cf() const { return {f[0], f[1], f[2]}; }
  Modes3 mo() { return {out[0], out[1], out[2]}; }
  Real3 ro() { return {rout[0], rout[1], rout[2]}; }

  std::array<std::vector<double>, 3> k, r, rout;
  std::array<std::vector<Complex>, 3> f, out;
};

std::size_t cube(benchmark::State &state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  return n * n * n;
}

template <bool Par>
void bm_curl(benchmark::State &state)
{
  Data d(cube(state));
  for (auto _ : state)
  {
    if constexpr (Par)
      parallel::curl_modes(d.ck(), d.cf(), d.mo());
    else
      serial::curl_modes(d.ck(), d.cf(), d.mo());
    benchmark::DoNotOptimize(d.out[0].data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cube(state)));
}

template <bool Par>
void bm_leray(benchmark::State &state)
{
  Data d(cube(state));
  for (auto _ : state)
  {
    if constexpr (Par)
      parallel::leray_modes(d.ck(), d.cf(), d.mo());
    else
      serial::leray_modes(d.ck(), d.cf(), d.mo());
    benchmark::DoNotOptimize(d.out[0].data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cube(state)));
}

template <bool Par>
void bm_cross(benchmark::State &state)
{
  Data d(cube(state));
  for (auto _ : state)
  {
    if constexpr (Par)
      parallel::cross(d.ck(), d.cr(), d.ro());
    else
      serial::cross(d.ck(), d.cr(), d.ro());
    benchmark::DoNotOptimize(d.rout[0].data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cube(state)));
}

template <bool Par>
void bm_norm(benchmark::State &state)
{
  Data d(cube(state));
  for (auto _ : state)
  {
    double v = 0.0;
    if constexpr (Par)
      v = parallel::weighted_norm2(d.k[0], d.f[0]);
    else
      v = serial::weighted_norm2(d.k[0], d.f[0]);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cube(state)));
}

template <bool Par>
void bm_commutator(benchmark::State &state)
{
  const int half = static_cast<int>(state.range(0));
  const int out_half = 2 * half;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  std::vector<Complex> b(box_size(half)), g(box_size(half));
  for (std::size_t i = 0; i < b.size(); ++i)
  {
    b[i] = Complex(d(rng), d(rng));
    g[i] = Complex(d(rng), d(rng));
  }
  std::vector<double> m_in(box_size(half)), m_out(box_size(out_half)), pre(box_size(out_half), 1.0);
  for (auto &m : m_in)
    m = d(rng);
  for (auto &m : m_out)
    m = d(rng);
  std::array<std::vector<Complex>, 3> out;
  for (auto &o : out)
    o.resize(box_size(out_half));
  CommutatorProblem p;
  p.input_half = half;
  p.b = {b, b, b};
  p.g = g;
  p.m_in = m_in;
  p.m_out = m_out;
  p.pre_out = pre;
  const Modes3 mo{out[0], out[1], out[2]};
  for (auto _ : state)
  {
    if constexpr (Par)
      parallel::lattice_commutator(p, mo);
    else
      serial::lattice_commutator(p, mo);
    benchmark::DoNotOptimize(out[0].data());
  }
}

}  // namespace

BENCHMARK(bm_curl<false>)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_curl<true>)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_leray<false>)->Arg(64)->Arg(128);
BENCHMARK(bm_leray<true>)->Arg(64)->Arg(128);
BENCHMARK(bm_cross<false>)->Arg(64)->Arg(128);
BENCHMARK(bm_cross<true>)->Arg(64)->Arg(128);
BENCHMARK(bm_norm<false>)->Arg(64)->Arg(128);
BENCHMARK(bm_norm<true>)->Arg(64)->Arg(128);
BENCHMARK(bm_commutator<false>)->Arg(3)->Arg(5);
BENCHMARK(bm_commutator<true>)->Arg(3)->Arg(5);

BENCHMARK_MAIN();
