#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "quasigeo/construct.hpp"
#include "quasigeo/curves.hpp"
#include "quasigeo/oracle.hpp"
#include "quasigeo/tetra.hpp"
#include "quasigeo/unfolding.hpp"

namespace {

using namespace quasigeo;

void bm_face_angles(benchmark::State& state) {
    const Tetrahedron tet = fixtures::n150();
    for (auto _ : state) benchmark::DoNotOptimize(face_angles(tet));
}
BENCHMARK(bm_face_angles);

void bm_star_unfold(benchmark::State& state) {
    const Tetrahedron tet = fixtures::n150();
    for (auto _ : state) benchmark::DoNotOptimize(star_unfold(tet, 0));
}
BENCHMARK(bm_star_unfold);

void bm_cut_locus(benchmark::State& state) {
    const Tetrahedron tet = fixtures::n150();
    const StarUnfolding su = star_unfold(tet, 0);
    for (auto _ : state) benchmark::DoNotOptimize(cut_locus(su));
}
BENCHMARK(bm_cut_locus);

void bm_construct_q1(benchmark::State& state) {
    const Tetrahedron tet = fixtures::pointed_only();
    for (auto _ : state) benchmark::DoNotOptimize(construct_q1(tet));
}
BENCHMARK(bm_construct_q1);

void bm_construct_q2(benchmark::State& state) {
    const Tetrahedron tet = fixtures::pointed_only();
    for (auto _ : state) benchmark::DoNotOptimize(construct_q2(tet));
}
BENCHMARK(bm_construct_q2);

void bm_verify_loop(benchmark::State& state) {
    const Tetrahedron tet = fixtures::n150();
    const ClosedSurfaceCurve curve = construct_q1(tet).curve;
    for (auto _ : state) benchmark::DoNotOptimize(verify(tet, curve));
}
BENCHMARK(bm_verify_loop);

void bm_enumerate_all(benchmark::State& state) {
    const Tetrahedron tet = fixtures::n150();
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_all(tet));
}
BENCHMARK(bm_enumerate_all);

void bm_trace_quad(benchmark::State& state) {
    const Tetrahedron tet = fixtures::iso_box_default();
    const SurfacePoint start = SurfacePoint::on_edge(0, 2, 0.5);
    const SurfacePoint next = SurfacePoint::on_edge(1, 2, 0.5);
    const Vec2 p0 = point_in_face_frame(tet, start, 3);
    const Vec2 p1 = point_in_face_frame(tet, next, 3);
    const double direction = fan_angle_at(tet, start, 3, p1 - p0);
    const double bound = 4.0 * tet.longest_edge();
    for (auto _ : state)
        benchmark::DoNotOptimize(trace(tet, start, direction, bound));
}
BENCHMARK(bm_trace_quad);

void bm_sweep_coarse(benchmark::State& state) {
    const Tetrahedron tet = fixtures::n150();
    const double bound = 3.0 * tet.longest_edge();
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_loops(tet, 1, 0.01, bound));
}
BENCHMARK(bm_sweep_coarse);

}  // namespace

BENCHMARK_MAIN();
