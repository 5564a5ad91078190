#include <doctest.h>

#include "dagbench/sample.hpp"
#include "oracles.hpp"
#include "paper_cases.hpp"

using namespace dagbench;

TEST_CASE("boolean worked examples") {
  CHECK(eval_bool(cases::bool_double_not_case()) == Truth3::True);
  CHECK(eval_bool(cases::bool_false_case()) == Truth3::False);
  Dag leaf = cases::build_tree({{"aaa", std::nullopt, Value{Truth3::True}, {}}}, 0, 1, 1);
  CHECK(eval_bool(leaf) == Truth3::True);
}

TEST_CASE("boolean evaluator agrees with exhaustive truth tables") {
  const TaskConstraint c = logic_constraint();
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const Dag dag = gen_tdag(3, 2, c, rng, &bool_eval_op);
    const auto leaves = oracle::leaves_of(dag);
    REQUIRE(leaves.size() <= 4);
    const std::size_t combos = 1u << leaves.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
      Dag assigned = dag;
      std::vector<std::optional<Truth3>> override(dag.nodes.size());
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        const Truth3 v = (mask >> i) & 1 ? Truth3::True : Truth3::False;
        assigned.nodes[leaves[i]].value = v;
        override[leaves[i]] = v;
      }
      recompute_values(assigned, &bool_eval_op);
      CHECK(eval_bool(assigned) == oracle::eval_bool_recursive(dag, dag.root, override));
    }
  }
}

TEST_CASE("deductive worked examples") {
  CHECK(eval_deductive(cases::deductive_na_case()) == Truth3::NA);
  CHECK(eval_deductive(cases::deductive_true_case()) == Truth3::True);

  // all-True leaves under a pure AND tree deduce True
  Dag and_tree = cases::build_tree(
      {
          {"aaa", std::nullopt, Value{Truth3::True}, {}},
          {"aab", std::nullopt, Value{Truth3::True}, {}},
          {"aac", Op::And, std::nullopt, {0, 1}},
          {"aad", std::nullopt, Value{Truth3::True}, {}},
          {"aae", std::nullopt, Value{Truth3::True}, {}},
          {"aaf", Op::And, std::nullopt, {3, 4}},
          {"aag", Op::And, std::nullopt, {2, 5}},
      },
      6, 3, 2);
  recompute_values(and_tree, &deductive_eval_op);
  CHECK(eval_deductive(and_tree) == Truth3::True);
}

TEST_CASE("deductive evaluation matches the independent recursive oracle") {
  const TaskConstraint c = logic_constraint();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const Dag dag = gen_tdag(seed % 2 ? 3 : 4, 2, c, rng, &deductive_eval_op);
    const std::vector<std::optional<Truth3>> no_override(dag.nodes.size());
    CHECK(eval_deductive(dag) == oracle::eval_deductive_recursive(dag, dag.root, no_override));
  }
}

TEST_CASE("deductive results refine boolean results") {
  const TaskConstraint c = logic_constraint();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const Dag dag = gen_tdag(3, 2, c, rng, &deductive_eval_op);
    const Truth3 ded = eval_deductive(dag);
    CHECK((ded == Truth3::True || ded == Truth3::NA));  // op roots never deduce False
    if (ded == Truth3::True) CHECK(eval_bool(dag) == Truth3::True);
  }
}

TEST_CASE("kleene NOT is an involution on all three values") {
  for (Truth3 v : {Truth3::True, Truth3::False, Truth3::NA})
    CHECK(kleene_not(kleene_not(v)) == v);
}

TEST_CASE("abductive worked examples") {
  {
    const Dag dag = cases::abductive_false_case();
    // aag False, query aab: both ORs decompose to all-False
    CHECK(eval_abductive(dag, Truth3::False, 1) == Truth3::False);
  }
  {
    const Dag dag = cases::abductive_na_case();
    // aad False forces aac True through NOT, and a True node pins nothing
    CHECK(eval_abductive(dag, Truth3::False, 1) == Truth3::NA);
  }
  {
    // a True root gives no backward information at all
    const Dag dag = cases::abductive_false_case();
    for (NodeId leaf : oracle::leaves_of(dag))
      CHECK(eval_abductive(dag, Truth3::True, leaf) == Truth3::NA);
  }
  {
    // AND with a False conclusion cannot isolate a conjunct
    Dag dag = cases::build_tree(
        {
            {"aaa", std::nullopt, Value{Truth3::True}, {}},
            {"aab", std::nullopt, Value{Truth3::True}, {}},
            {"aac", Op::And, std::nullopt, {0, 1}},
        },
        2, 2, 2);
    CHECK(eval_abductive(dag, Truth3::False, 0) == Truth3::NA);
  }
}

TEST_CASE("abductive target must be a leaf in the dag") {
  const Dag dag = cases::abductive_na_case();
  CHECK_THROWS_AS(eval_abductive(dag, Truth3::False, 2), IntegrityError);   // internal node
  CHECK_THROWS_AS(eval_abductive(dag, Truth3::False, 99), IntegrityError);  // unknown id
}

TEST_CASE("abduced values are exactly what a False root pins (brute force)") {
  // necessity: flipping the abduced leaf forces the root to deduce True under
  // every assignment of the remaining leaves, contradicting the given False
  // root. consistency: the abduced value admits at least one assignment where
  // the root does not deduce True.
  const TaskConstraint c = logic_constraint();
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const Dag dag = gen_tdag(3, 2, c, rng, &deductive_eval_op);
    const auto leaves = oracle::leaves_of(dag);
    if (leaves.size() > 4) continue;
    for (NodeId target : leaves) {
      const Truth3 abduced = eval_abductive(dag, Truth3::False, target);
      if (abduced == Truth3::NA) continue;
      std::vector<NodeId> rest;
      for (NodeId l : leaves)
        if (l != target) rest.push_back(l);
      const std::size_t combos = 1u << rest.size();
      bool flipped_always_contradicts = true;
      bool abduced_has_consistent_world = false;
      for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<std::optional<Truth3>> override(dag.nodes.size());
        for (std::size_t i = 0; i < rest.size(); ++i)
          override[rest[i]] = (mask >> i) & 1 ? Truth3::True : Truth3::False;
        override[target] = kleene_not(abduced);
        if (oracle::eval_deductive_recursive(dag, dag.root, override) != Truth3::True)
          flipped_always_contradicts = false;
        override[target] = abduced;
        if (oracle::eval_deductive_recursive(dag, dag.root, override) != Truth3::True)
          abduced_has_consistent_world = true;
      }
      CHECK(flipped_always_contradicts);
      CHECK(abduced_has_consistent_world);
    }
  }
}

TEST_CASE("gen_logic produces task-appropriate answer classes") {
  const ComplexitySpec d4 = preset(Task::BooleanLogic, Level::D4);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const LogicSample b = gen_logic(LogicMode::Boolean, d4, rng);
    CHECK((b.answer == Truth3::True || b.answer == Truth3::False));

    Rng rng2(seed);
    const LogicSample d = gen_logic(LogicMode::Deductive, d4, rng2);
    CHECK((d.answer == Truth3::True || d.answer == Truth3::NA));

    Rng rng3(seed);
    const LogicSample a = gen_logic(LogicMode::Abductive, d4, rng3);
    CHECK(a.dag.nodes[a.target].is_leaf());
    CHECK((a.given_root == Truth3::True || a.given_root == Truth3::False));
    CHECK(a.answer == eval_abductive(a.dag, a.given_root, a.target));
  }
}

TEST_CASE("gen_logic label balancing resamples to the requested class") {
  const ComplexitySpec d2 = preset(Task::BooleanLogic, Level::D2);
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    const Truth3 want = i % 2 ? Truth3::True : Truth3::False;
    const LogicSample s = gen_logic(LogicMode::Boolean, d2, rng, want);
    CHECK(s.answer == want);
  }
}
