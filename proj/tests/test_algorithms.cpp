#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "localsearch/algorithms/execute.hpp"
#include "localsearch/algorithms/search.hpp"
#include "localsearch/analytic/classes.hpp"
#include "localsearch/analytic/model.hpp"
#include "localsearch/sim/run.hpp"
#include "support.hpp"

using namespace localsearch;
using namespace localsearch::algorithms;

namespace {

SearchSpec spec(Variant v, int n, std::string target) {
    SearchSpec s;
    s.variant = v;
    s.n = n;
    s.targets = {std::move(target)};
    return s;
}

double p_success(const SearchSpec& s) {
    const auto t = s.target_indices();
    return success_probability(run_fast(s), t);
}

}  // namespace

TEST(GroverSequence, Shape) {
    const auto seq = grover_sequence(4, 3);
    EXPECT_EQ(oracle_calls(seq), 3);
    for (const auto& st : seq) EXPECT_EQ(st.kind, DiffusionKind::Global);
    EXPECT_TRUE(grover_sequence(4, 0).empty());
    EXPECT_THROW(grover_sequence(4, -1), InvalidArgument);
}

TEST(GroverSequence, Probabilities) {
    auto s = spec(Variant::Grover, 4, "0110");
    s.k = 0;
    EXPECT_NEAR(p_success(s), 1.0 / 16, 1e-15);
    s.k = 3;
    EXPECT_NEAR(p_success(s), 0.961, 0.001);
    auto s2 = spec(Variant::Grover, 2, "10");
    EXPECT_NEAR(p_success(s2), 1.0, 1e-14);
    auto s6 = spec(Variant::Grover, 6, "101101");
    s6.k = 4;
    EXPECT_NEAR(p_success(s6), 0.816, 0.001);
}

TEST(GroverSequence, FastPathMatchesGateCircuit) {
    auto s = spec(Variant::Grover, 5, "10011");
    s.k = 4;
    const auto gate = sim::run(to_circuit(s, OracleForm::Expanded));
    EXPECT_TRUE(sim::states_equal_up_to_phase(gate, run_fast(s)));
}

TEST(GroverIterationCount, LiteralAndArgmax) {
    const auto g2 = grover_iteration_count(2);
    EXPECT_EQ(g2.literal, 0);
    EXPECT_EQ(g2.argmax, 1);
    EXPECT_EQ(grover_iteration_count(6).argmax, 6);
    EXPECT_NEAR(analytic::grover_probability(6, 4), 0.816, 0.001);
    const auto g16 = grover_iteration_count(16);
    EXPECT_EQ(g16.threshold, 183u);
    EXPECT_GE(analytic::grover_probability(16, 183), 0.98);
    EXPECT_EQ(g16.literal, 200);
    EXPECT_EQ(g16.argmax, 201);
}

TEST(PartialSequence, Presets) {
    auto s = spec(Variant::Partial, 4, "1100");
    s.preset = "paper-4q";
    const auto seq = sequence_for(s);
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_EQ(seq[0], Step::local({0, 1}));
    EXPECT_EQ(seq[1], Step::global(4));
    EXPECT_EQ(seq[2], Step::local({0, 1}));
    EXPECT_NEAR(p_success(s), 0.77, 0.005);

    auto s6 = spec(Variant::Partial, 6, "110010");
    s6.preset = "paper-6q";
    EXPECT_NEAR(p_success(s6), 0.531, 0.01);
    EXPECT_THROW(partial_preset("paper-4q", 5), InvalidArgument);
    EXPECT_THROW(partial_preset("nope", 4), InvalidArgument);
}

TEST(PartialSequence, AllGlobalPatternIsGrover) {
    auto p = spec(Variant::Partial, 5, "01101");
    p.m = 3;
    p.pattern = "GGGG";
    auto g = spec(Variant::Grover, 5, "01101");
    g.k = 4;
    EXPECT_EQ(sequence_for(p), sequence_for(g));
    EXPECT_LT(testsupport::max_abs_diff(run_fast(p), run_fast(g)), 1e-14);
    EXPECT_THROW(parse_pattern("LXG"), InvalidArgument);
}

TEST(EfficientSequence, ShapeAndAccounting) {
    const auto seq = efficient_sequence(6, 2, 2, 3, 4);
    EXPECT_EQ(oracle_calls(seq), (2 + 3) * 4);
    EXPECT_EQ(seq[0].subset, (std::vector<int>{4, 5}));
    EXPECT_EQ(seq[1].subset, (std::vector<int>{4, 5}));
    EXPECT_EQ(seq[2].subset, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(oracle_calls(efficient_sequence(6, 2, 2, 3, 4, Tail::ExtraFirstLocal)), 21);
    EXPECT_THROW(efficient_sequence(4, 0, 1, 1, 1), InvalidArgument);
    EXPECT_THROW(efficient_sequence(4, 4, 1, 1, 1), InvalidArgument);
    EXPECT_THROW(efficient_sequence(4, 2, 0, 1, 1), InvalidArgument);
}

TEST(EfficientSequence, DemoCircuits) {
    auto s = spec(Variant::Efficient, 4, "1100");
    s.m = 2;
    s.tail = Tail::ExtraFirstLocal;
    const auto seq = sequence_for(s);
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_EQ(seq[0].subset, (std::vector<int>{2, 3}));
    EXPECT_EQ(seq[1].subset, (std::vector<int>{0, 1}));
    EXPECT_EQ(seq[2].subset, (std::vector<int>{2, 3}));
    EXPECT_NEAR(p_success(s), 0.766, 0.005);

    auto s6 = spec(Variant::Efficient, 6, "011010");
    s6.m = 3;
    s6.tail = Tail::ExtraFirstLocal;
    EXPECT_NEAR(p_success(s6), 0.410, 0.01);
}

TEST(EfficientSequence, SwapGivesSameProbability) {
    for (int n = 3; n <= 8; ++n)
        for (int m = 1; m < n; ++m)
            for (auto tail : {Tail::None, Tail::ExtraFirstLocal}) {
                auto a = spec(Variant::Efficient, n, std::string(static_cast<std::size_t>(n), '1'));
                a.targets[0][0] = '0';
                a.m = m;
                a.k = 3;
                a.tail = tail;
                auto b = a;
                b.swap = true;
                EXPECT_NEAR(p_success(a), p_success(b), 1e-12) << n << " " << m;
            }
}

TEST(EfficientSequence, TenQubitMatchesModelAtK26) {
    auto s = spec(Variant::Efficient, 10, "1011001110");
    s.m = 5;
    s.k = 26;
    const auto model = analytic::evolve(10, 5, 1, 1, 26).back();
    EXPECT_NEAR(p_success(s), model, 1e-9);
}

TEST(EfficientSequence, ModelMatchesStateVectorExhaustively) {
    for (int n = 4; n <= 12; ++n)
        for (int m = 2; m <= n - 2; ++m)
            for (int k1 = 1; k1 <= 3; ++k1)
                for (int k2 = 1; k2 <= 3; ++k2) {
                    const BasisIndex target = (BasisIndex{0x5A5} * static_cast<BasisIndex>(n)) & ((BasisIndex{1} << n) - 1);
                    const std::vector<BasisIndex> t{target};
                    const auto part = efficient_partition(n, m);
                    const auto trace = analytic::evolve(n, m, k1, k2, 10);
                    auto s = sim::StateVector::uniform(n);
                    for (int k = 1; k <= 10; ++k) {
                        for (int i = 0; i < k1; ++i) {
                            sim::apply_oracle_fast(s, t);
                            sim::apply_local_diffusion_fast(s, part.first);
                        }
                        for (int i = 0; i < k2; ++i) {
                            sim::apply_oracle_fast(s, t);
                            sim::apply_local_diffusion_fast(s, part.second);
                        }
                        ASSERT_NEAR(s.probability(target), trace[static_cast<std::size_t>(k)], 1e-9)
                            << n << " " << m << " " << k1 << " " << k2 << " " << k;
                    }
                    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
                }
}

TEST(EfficientSequence, ClassCoefficientsTrackModel) {
    const int n = 8, m = 3;
    const BasisIndex target = 0b10110010;
    const std::vector<BasisIndex> t{target};
    const auto part = efficient_partition(n, m);
    auto s = sim::StateVector::uniform(n);
    analytic::CallStepper model(n, m, 1, 1);
    for (int call = 1; call <= 20; ++call) {
        sim::apply_oracle_fast(s, t);
        sim::apply_local_diffusion_fast(s, model.next_is_m() ? part.first : part.second);
        model.step();
        const auto sum = analytic::summarize(s, target, part.first);
        for (int c = 0; c < 4; ++c) {
            EXPECT_LT(sum.max_spread[c], 1e-12);
            // Class coefficients agree up to the global sign of -D.
            EXPECT_NEAR(std::abs(static_cast<double>(sum.coefficients.as_array()[c])),
                        std::abs(static_cast<double>(model.state().as_array()[c])), 1e-12);
        }
    }
}

TEST(EfficientSequence, DoubleLocalLeavesComplementClassesUnchanged) {
    const int n = 7, m = 3;
    const BasisIndex target = 0b0110101;
    const std::vector<BasisIndex> t{target};
    const auto part = efficient_partition(n, m);
    const BasisIndex mask = qubits_mask(n, part.first);
    auto s = sim::StateVector::uniform(n);
    sim::apply_oracle_fast(s, t);
    sim::apply_local_diffusion_fast(s, part.second);  // break uniformity first
    const auto before = s;
    for (int rep = 0; rep < 2; ++rep) {
        sim::apply_oracle_fast(s, t);
        sim::apply_local_diffusion_fast(s, part.first);
    }
    for (BasisIndex i = 0; i < s.dimension(); ++i) {
        const auto c = analytic::classify(i, target, mask);
        if (c == analytic::StateClass::U || c == analytic::StateClass::NtNm) {
            EXPECT_NEAR(std::abs(s[i] - before[i]), 0.0, 1e-10) << i;
        }
    }
}

TEST(EfficientSequence, NormPreserved) {
    auto s = spec(Variant::Efficient, 9, "101010101");
    s.m = 4;
    s.k1 = 2;
    s.k = 15;
    EXPECT_NEAR(run_fast(s).norm_squared(), 1.0, 1e-10);
}

TEST(Ist, Examples) {
    sim::Histogram h{2, 0, {}};
    h.add(0b11, 100);
    EXPECT_TRUE(std::isinf(ist(h, "11")));
    sim::Histogram u{2, 0, {}};
    for (BasisIndex b = 0; b < 4; ++b) u.add(b, 250);
    EXPECT_NEAR(ist(u, "01"), 1.0, 1e-12);
    sim::Histogram r{4, 0, {}};
    r.add(0b1100, 96);
    r.add(0b0000, 84);
    r.add(0b0101, 20);
    EXPECT_NEAR(ist(r, "1100"), 96.0 / 84, 1e-12);
    EXPECT_NEAR(ist(r, "1100"), 1.14, 0.005);
    sim::Histogram miss{4, 0, {}};
    miss.add(0b0000, 5);
    EXPECT_EQ(ist(miss, "1111"), 0.0);
    sim::Histogram empty{4, 0, {}};
    EXPECT_THROW(ist(empty, "1111"), InvalidArgument);
}

TEST(SearchSpec, JsonRoundTrip) {
    auto s = spec(Variant::Efficient, 6, "011010");
    s.m = 3;
    s.k1 = 2;
    s.k = 5;
    s.tail = Tail::ExtraFirstLocal;
    s.swap = true;
    const auto back = search_spec_from_json(to_json(s));
    EXPECT_EQ(sequence_for(back), sequence_for(s));
    EXPECT_EQ(to_json(back), to_json(s));

    auto custom = spec(Variant::Grover, 3, "101");
    custom.steps = {Step::local({0, 2}), Step::global(3)};
    EXPECT_EQ(sequence_for(search_spec_from_json(to_json(custom))), custom.steps);

    EXPECT_THROW(search_spec_from_json(nlohmann::json{{"variant", "grover"}}), InvalidArgument);
    EXPECT_THROW(search_spec_from_json(nlohmann::json{{"variant", "x"}, {"n", 2}, {"target", "01"}}), InvalidArgument);
    EXPECT_THROW(search_spec_from_json(nlohmann::json{{"variant", "grover"}, {"n", 2}, {"target", "012"}}), InvalidArgument);
}

TEST(SearchSpec, Validation) {
    auto s = spec(Variant::Grover, 3, "101");
    s.steps = {Step::local({0, 0})};
    EXPECT_THROW(sequence_for(s), InvalidArgument);
    auto noTarget = spec(Variant::Grover, 3, "101");
    noTarget.targets.clear();
    EXPECT_THROW(sequence_for(noTarget), InvalidArgument);
}

TEST(Execute, FourQubitReports) {
    auto g = spec(Variant::Grover, 4, "1100");
    g.k = 3;
    auto p = spec(Variant::Partial, 4, "1100");
    p.preset = "paper-4q";
    auto e = spec(Variant::Efficient, 4, "1100");
    e.m = 2;
    e.tail = Tail::ExtraFirstLocal;
    const auto model = circuit::CostModel::defaults();
    const auto rg = execute(g, {0, 1, {}, model});
    const auto rp = execute(p, {0, 1, {}, model});
    const auto re = execute(e, {0, 1, {}, model});
    EXPECT_EQ(rg.oracle_calls, 3);
    EXPECT_EQ(re.model_cnots, 33);
    EXPECT_LT(re.model_cnots, rp.model_cnots);
    EXPECT_LT(rp.model_cnots, rg.model_cnots);
    EXPECT_LT(re.cnots, rp.cnots);
    EXPECT_LT(rp.cnots, rg.cnots);
    EXPECT_FALSE(rg.histogram.has_value());
    EXPECT_FALSE(rg.ist.has_value());
}

TEST(Execute, SampledReportHasIst) {
    auto e = spec(Variant::Efficient, 4, "1100");
    e.m = 2;
    e.tail = Tail::ExtraFirstLocal;
    const auto r = execute(e, {4096, 7, {}, circuit::CostModel::defaults()});
    ASSERT_TRUE(r.histogram && r.ist && r.observed_success);
    EXPECT_EQ(r.histogram->shots, 4096u);
    EXPECT_NEAR(*r.observed_success, 0.766, 0.03);
    EXPECT_GT(*r.ist, 1.0);
    const auto again = execute(e, {4096, 7, {}, circuit::CostModel::defaults()});
    EXPECT_EQ(*again.histogram, *r.histogram);
}
