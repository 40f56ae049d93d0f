#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "qsl_horizon/figures.hpp"

using namespace qsl;

TEST(SweepRange, GridAndValidation) {
  const auto g = SweepRange{1.0, 1.05, 6}.grid();
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_EQ(g.back(), 1.05);
  EXPECT_NEAR(g[1], 1.01, 1e-15);
  EXPECT_THROW((SweepRange{0.0, 1.0, 1}.grid()), std::invalid_argument);
  EXPECT_THROW((SweepRange{1.0, 1.0, 5}.grid()), std::invalid_argument);
}

TEST(SweepConfig, Validation) {
  SweepConfig cfg;
  cfg.range = {0.0, 2.0, 11};
  EXPECT_NO_THROW(cfg.validate());
  cfg.variable = SweepVariable::s;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.model = Model::dephasing;
  cfg.range = {-1.0, 2.0, 11};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.range = {0.5, 2.0, 11};
  cfg.fixed.bloch = {1.0, 1.0, 0.0};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(ParallelMap, PreservesOrderAndPropagatesErrors) {
  const auto v = parallel_map(1000, [](std::size_t i) { return 2.0 * i; }, 4);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], 2.0 * i);
  EXPECT_THROW(parallel_map(
                   50,
                   [](std::size_t i) -> double {
                     if (i == 17) throw std::runtime_error("boom");
                     return 0.0;
                   },
                   3),
               std::runtime_error);
}

TEST(WorkerCount, EnvironmentCap) {
  setenv("QSL_HORIZON_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  setenv("QSL_HORIZON_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("QSL_HORIZON_THREADS");
}

TEST(Table, CsvSchema) {
  Table t;
  t.x = {0.0, 0.5};
  t.columns.push_back({"a", {1.0 / 3.0, 2.0}});
  t.columns.push_back({"b", {1e-20, -4.0}});
  EXPECT_EQ(t.to_csv(), "x,a,b\n0,0.333333333333,1e-20\n0.5,2,-4\n");
}

TEST(Coherence, CsvExamples) {
  const auto csv = coherence_csv(10.0, {1.0, 1.05, 11}, {1.0, 0.0, 0.0});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r0,omega,coherence");
  std::getline(in, line);
  EXPECT_EQ(line, "1,10,0.707106781187");
  double prev = 0.0, last = 0.0;
  while (std::getline(in, line)) {
    last = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_GT(last, prev);
    prev = last;
  }
  EXPECT_NEAR(last, 0.948, 1e-3);

  const auto flat = coherence_csv(10.0, {1.0, 1.05, 5}, {0.0, 0.0, 1.0});
  EXPECT_EQ(flat.find(",0.") == std::string::npos, true);
}

TEST(Figures, IdsAndShapes) {
  EXPECT_EQ(figure_ids().size(), 9u);
  EXPECT_THROW(reproduce_figure("fig10"), std::invalid_argument);
  const auto f1 = reproduce_figure("fig1");
  EXPECT_EQ(f1.table.columns.size(), 3u);
  EXPECT_EQ(f1.table.x.size(), 201u);
  const auto f2 = reproduce_figure("fig2");
  ASSERT_EQ(f2.table.columns.size(), 8u);
  EXPECT_EQ(f2.table.columns[0].label, "tau_qsl[R0=1]");
  EXPECT_EQ(f2.table.columns[7].label, "ratio[R0=1.05]");
  EXPECT_EQ(f2.plotted, 4u);
  EXPECT_EQ(reproduce_figure("fig5").table.columns[0].label, "tau_qsl[gamma0=0.1;Omega=5]");
  EXPECT_EQ(reproduce_figure("fig9").table.columns[5].label, "tau_qsl[s=4.5;Omega=20]");
}

TEST(Figures, DeterministicAcrossThreadCounts) {
  const auto a = reproduce_figure("fig3", 1);
  const auto b = reproduce_figure("fig3", 4);
  EXPECT_EQ(a.table.to_csv(), b.table.to_csv());
  EXPECT_EQ(render_svg(a), render_svg(b));
}

TEST(Figures, DephasingOrderingAtReferenceCurves) {
  const auto f6 = reproduce_figure("fig6").table;
  const auto& lo = f6.column("tau_qsl[R0=1]").values;
  const auto& hi = f6.column("tau_qsl[R0=1.05]").values;
  for (std::size_t i = 0; i < lo.size(); ++i) EXPECT_GT(hi[i], lo[i]);
}

TEST(Figures, SvgIsWellFormed) {
  const auto svg = render_svg(reproduce_figure("fig7"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  EXPECT_EQ(count, 4u);
}

TEST(Sweep, OneCurve) {
  SweepConfig cfg;
  cfg.model = Model::dephasing;
  cfg.variable = SweepVariable::r0;
  cfg.range = {1.0, 1.05, 11};
  cfg.fixed.s = 0.5;
  const auto t = run_sweep(cfg);
  ASSERT_EQ(t.columns.size(), 2u);
  EXPECT_EQ(t.columns[0].label, "tau_qsl");
  EXPECT_EQ(t.columns[1].label, "ratio");
  EXPECT_NEAR(t.columns[0].values.back(), hawking_factors(10.0, 1.05, {}).j_minus, 1e-12);
}

TEST(Oracle, PointAgreement) {
  ParameterRecord rec;
  rec.gamma0 = 3.0;
  rec.tau = 1.3;
  rec.r0 = 1.04;
  rec.bloch = {0.4, 0.1, -0.6};
  EXPECT_NEAR(evaluate_qsl(Model::jc, rec).tau_qsl / evaluate_oracle(Model::jc, rec).tau_qsl, 1.0, 1e-6);
  rec.s = 4.5;
  EXPECT_NEAR(evaluate_qsl(Model::dephasing, rec).tau_qsl / evaluate_oracle(Model::dephasing, rec).tau_qsl, 1.0,
              1e-9);
}
