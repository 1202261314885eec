#include "qaoa/circuits.hpp"
#include "qaoa/evaluator.hpp"
#include "qaoa/problem_io.hpp"
#include "qaoa/reference_data.hpp"
#include "qaoa/sim/circuit_io.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qaoa;

TEST(InstanceJson, RoundTrip) {
  const auto inst = make_instance(reference_dax5(), 2, 1.0 / 3.0);
  const auto j = instance_to_json(inst, 0.125);
  const auto back = instance_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.instance.stats.asset_ids, inst.stats.asset_ids);
  EXPECT_EQ(back.instance.stats.mu, inst.stats.mu);
  EXPECT_EQ(back.instance.stats.sigma, inst.stats.sigma);
  EXPECT_EQ(back.instance.budget, 2);
  EXPECT_EQ(back.instance.risk, 1.0 / 3.0);
  ASSERT_TRUE(back.penalty);
  EXPECT_EQ(*back.penalty, 0.125);
  EXPECT_FALSE(instance_from_json(instance_to_json(inst)).penalty);
}

TEST(InstanceJson, Rejects) {
  auto j = instance_to_json(make_instance(reference_dax5(), 2, 0.5));
  auto bad = j;
  bad["mu"].erase(0);
  EXPECT_THROW(instance_from_json(bad), std::invalid_argument);
  bad = j;
  bad["sigma"][1].erase(0);
  EXPECT_THROW(instance_from_json(bad), std::invalid_argument);
  bad = j;
  bad["B"] = 5;
  EXPECT_THROW(instance_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("q");
  EXPECT_THROW(instance_from_json(bad), json::out_of_range);
}

TEST(SummaryJson, Fields) {
  const auto inst = make_instance(reference_dax5(), 2, 1.0 / 3.0);
  const auto pen = calibrate_penalty(inst);
  const auto s = brute_force_summary(inst, pen);
  const auto j = summary_to_json(s);
  EXPECT_EQ(j["F_min"].get<double>(), s.f_min);
  EXPECT_EQ(j["A"].get<double>(), pen.A);
  const auto bits = j["argmin"].get<std::string>();
  ASSERT_EQ(bits.size(), 5u);
  EXPECT_EQ(parse_bitstring(bits, 5), s.argmin);
  EXPECT_EQ(std::count(bits.begin(), bits.end(), '1'), 2);
}

TEST(IsingJson, RoundTripAndUpperTriangleOrder) {
  const auto inst = oracle::random_instance(6, 3, 0.4, 17);
  const auto m = encode(inst, {0.3}, 2.5);
  const auto j = ising_to_json(m);
  ASSERT_EQ(j["W"].size(), 15u);
  EXPECT_EQ(j["W"][0].get<double>(), m.W(0, 1));
  EXPECT_EQ(j["W"][5].get<double>(), m.W(1, 2));
  EXPECT_EQ(j["W"][14].get<double>(), m.W(4, 5));
  const auto back = ising_from_json(json::parse(j.dump()));
  for (std::uint64_t s = 0; s < 64; ++s) EXPECT_EQ(diagonal_energy(back, s), diagonal_energy(m, s));
  EXPECT_EQ(back.lambda, m.lambda);
  auto bad = j;
  bad["W"].erase(0);
  EXPECT_THROW(ising_from_json(bad), std::invalid_argument);
}

TEST(CircuitJson, RoundTrip) {
  const auto inst = make_instance(reference_dax5(), 2, 0.5);
  const auto model = encode(inst, {0.2}, 3.0);
  for (MixerKind k : kAllMixers) {
    const auto a = build_ansatz(model, make_mixer(k, 5, 2), 2);
    const std::vector<double> g{0.1, 0.2}, b{0.3, 0.4};
    const auto circuit = full_circuit(a, g, b);
    const auto back = circuit_from_json(json::parse(circuit_to_json(circuit).dump()));
    ASSERT_EQ(back.size(), circuit.size());
    for (std::size_t i = 0; i < circuit.size(); ++i) {
      EXPECT_EQ(back[i].kind, circuit[i].kind);
      for (int t = 0; t < circuit[i].arity(); ++t)
        EXPECT_EQ(back[i].targets[static_cast<std::size_t>(t)], circuit[i].targets[static_cast<std::size_t>(t)]);
      for (int p = 0; p < parameter_count(circuit[i].kind); ++p)
        EXPECT_EQ(back[i].params[static_cast<std::size_t>(p)], circuit[i].params[static_cast<std::size_t>(p)]);
    }
  }
  EXPECT_THROW(gate_from_json(json{{"kind", "CNOT"}, {"targets", {0}}, {"params", json::array()}}),
               std::invalid_argument);
  EXPECT_THROW(gate_from_json(json{{"kind", "RX"}, {"targets", {0}}, {"params", json::array()}}),
               std::invalid_argument);
}

TEST(StateDump, LittleEndianLayout) {
  std::vector<cplx> amp{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  const auto psi = StateVector::from_amplitudes(2, amp);
  std::ostringstream out;
  write_state(out, psi);
  const auto bytes = out.str();
  ASSERT_EQ(bytes.size(), 64u);
  // 1.0 = 0x3FF0000000000000, least significant byte first.
  for (int k = 0; k < 6; ++k) EXPECT_EQ(bytes[static_cast<std::size_t>(k)], '\0');
  EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 0xF0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 0x3F);
  for (std::size_t k = 8; k < 64; ++k) EXPECT_EQ(bytes[k], '\0');
}

TEST(StateDump, RoundTrip) {
  const auto inst = make_instance(reference_dax5(), 2, 0.5);
  const auto a = build_ansatz(encode(inst, {0.2}, 3.0), make_mixer(MixerKind::ring, 5, 2), 1);
  const std::vector<double> g{0.7}, b{0.3};
  const auto psi = simulate_statevector(a, g, b);
  std::stringstream io;
  write_state(io, psi);
  const auto back = read_state(io, 5);
  for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(back.amplitudes()[i], psi.amplitudes()[i]);
  std::stringstream truncated(io.str().substr(0, 100));
  EXPECT_THROW(read_state(truncated, 5), std::runtime_error);
}
