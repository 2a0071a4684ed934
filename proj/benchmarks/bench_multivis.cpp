#include <random>

#include <benchmark/benchmark.h>

#include "multivis/drivers/ascii_tree.hpp"
#include "multivis/drivers/painter.hpp"
#include "multivis/drivers/ray_tracer.hpp"
#include "multivis/example_detector.hpp"
#include "multivis/scene.hpp"
#include "multivis/solids.hpp"

using namespace multivis;

namespace
{
SolidPtr shape(int kind)
{
    switch (kind)
    {
        case 0:
            return make_box("box", 10, 20, 30);
        case 1:
            return make_tube("tube", 5, 10, 20, 0.3, 4);
        case 2:
            return make_cone("cone", 0, 20, 0, 40, 30);
        case 3:
            return make_trd("trd", 60, 60, 50, 80, 30);
        case 4:
            return make_sphere("sphere", 5, 10, 0, 5, 0.2, 2);
        default:
            return make_subtraction("sub", make_box("b", 10, 10, 10), make_sphere("s", 0, 8),
                                    Transform(Vec3{5, 5, 5}));
    }
}

Scene b1_scene()
{
    Scene s("b1");
    s.add_model(PhysicalVolumeModel{make_b1_detector(), "World", unlimited_depth});
    return s;
}
}  // namespace

static void BM_RayIntersect(benchmark::State& state)
{
    auto solid = shape(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    std::vector<Ray> rays;
    for (int i = 0; i < 1024; ++i)
    {
        Vec3 d{n(rng), n(rng), n(rng)};
        Vec3 target{n(rng) * 5, n(rng) * 5, n(rng) * 5};
        rays.push_back(Ray::through(target - normalized(d) * 200, d));
    }
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(ray_intersect(*solid, rays[i++ % rays.size()]));
    state.SetLabel(solid->describe());
}
BENCHMARK(BM_RayIntersect)->DenseRange(0, 5);

static void BM_Tessellate(benchmark::State& state)
{
    auto solid = shape(static_cast<int>(state.range(0)));
    int segments = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(tessellate(*solid, segments));
}
BENCHMARK(BM_Tessellate)->ArgsProduct({{1, 2, 4, 5}, {24, 100}});

static void BM_PainterTraversal(benchmark::State& state)
{
    Scene s = b1_scene();
    TraversalContext ctx;
    ctx.view.style = state.range(0) ? DrawingStyle::surface : DrawingStyle::wireframe;
    for (auto _ : state)
    {
        PainterSink p;
        traverse(s, p, ctx);
        benchmark::DoNotOptimize(p.items().size());
    }
}
BENCHMARK(BM_PainterTraversal)->Arg(0)->Arg(1);

static void BM_RayTracer(benchmark::State& state)
{
    Scene s = b1_scene();
    TraversalContext ctx;
    ctx.view.window.width = static_cast<int>(state.range(0));
    ctx.view.window.height = static_cast<int>(state.range(0));
    for (auto _ : state)
    {
        RayTracerSink rt(1);
        traverse(s, rt, ctx);
        benchmark::DoNotOptimize(rt.image().rgb.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RayTracer)->Arg(150)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_AsciiTree(benchmark::State& state)
{
    auto det = make_b1_detector();
    for (auto _ : state)
        benchmark::DoNotOptimize(ascii_tree_render(*det, 15));
}
BENCHMARK(BM_AsciiTree);
BENCHMARK_MAIN();
