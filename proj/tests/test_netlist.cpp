#include <doctest.h>

#include "scpdp/dualrail.hpp"
#include "scpdp/netlist.hpp"
#include "test_util.hpp"

using namespace scpdp;

TEST_CASE("parse minimal circuits") {
  auto n = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  CHECK(n.inputs().size() == 2);
  CHECK(n.outputs().size() == 1);
  CHECK(n.gates().size() == 1);
  CHECK(n.signal_count() == 3);

  auto inv = parse_netlist("input a\noutput y\ngate not y a\n");
  CHECK(inv.gates().size() == 1);
  CHECK(inv.gates()[0].op == GateOp::Not);

  // declaration order does not matter; duplicate gate input is legal
  auto late = parse_netlist("gate and y a a\ninput a\noutput y\n");
  CHECK(late.gates().size() == 1);
  CHECK(late.simulate({true}) == std::vector<bool>{true});
}

TEST_CASE("parse diagnostics carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_netlist("input a\ninput a\n"),
                       "line 2: duplicate driver for signal 'a'", ParseError);
  CHECK_THROWS_WITH_AS(parse_netlist("input a\noutput y\ngate and y a b\n"),
                       "line 3: signal 'b' has no driver", ParseError);
  CHECK_THROWS_WITH_AS(parse_netlist("input a\ngate foo y a\n"),
                       "line 2: unknown gate kind 'foo'", ParseError);
  CHECK_THROWS_WITH_AS(parse_netlist("input a b\ngate not y a b\n"),
                       "line 2: gate 'not' takes 1 input(s), got 2",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_netlist("input a b\ngate and y a\n"),
                       "line 2: gate 'and' takes 2 input(s), got 1",
                       ParseError);
  CHECK_THROWS_AS(
      parse_netlist("input a\ngate and x a y\ngate and y a x\noutput y\n"),
      ParseError);  // combinational cycle
  CHECK_THROWS_WITH_AS(parse_netlist("input 1bad\n"),
                       "line 1: invalid signal name '1bad'", ParseError);
  CHECK_THROWS_WITH_AS(parse_netlist("wire a\n"),
                       "line 1: unknown directive 'wire'", ParseError);
  CHECK_THROWS_WITH_AS(parse_netlist("input a\ngate not const0 a\n"),
                       "line 2: cannot drive reserved constant signal 'const0'",
                       ParseError);
}

TEST_CASE("comments and whitespace") {
  auto n = parse_netlist(
      "# a comment\ninput a b  # trailing\n\n\toutput  y\ngate xor y a b\n");
  CHECK(n.gates().size() == 1);
}

TEST_CASE("const0/const1 are implicitly driven") {
  auto n = parse_netlist("input a\noutput y z\ngate and y a const1\n"
                         "gate or z a const0\n");
  CHECK(n.simulate({true}) == std::vector<bool>{true, true});
  CHECK(n.simulate({false}) == std::vector<bool>{false, false});
}

TEST_CASE("serialize round trip") {
  const char* text = "gate and t a b\ninput a b c\noutput y\ngate xor y t c\n";
  auto n1 = parse_netlist(text);
  std::string s1 = serialize(n1);
  auto n2 = parse_netlist(s1);
  CHECK(n1 == n2);
  CHECK(serialize(n2) == s1);

  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto r = testutil::random_netlist(seed, 4, 20);
    std::string s = serialize(r);
    auto back = parse_netlist(s);
    CHECK(r == back);
    CHECK(serialize(back) == s);
  }
}

TEST_CASE("netlist hash is stable and content-sensitive") {
  auto a = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  auto b = parse_netlist("output y\ninput a b\ngate xor y a b\n");
  auto c = parse_netlist("input a b\noutput y\ngate and y a b\n");
  CHECK(netlist_hash(a) == netlist_hash(b));
  CHECK(netlist_hash(a) != netlist_hash(c));
}

TEST_CASE("expand: gate mapping and absorbed inversions") {
  auto n = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  auto d = expand_dual_rail(n);
  CHECK(d.gates().size() == 1);
  CHECK(d.gates()[0].kind == GateKind::Xor);
  CHECK(d.net_count() == 6);
  CHECK(d.site_count() == 16);
  CHECK(d.absorbed_inverters() == 0);

  auto inv = expand_dual_rail(parse_netlist("input a\noutput y\ngate not y a\n"));
  CHECK(inv.gates().empty());
  CHECK(inv.absorbed_inverters() == 1);
  CHECK(inv.net_count() == 2);  // the output pair aliases the input nets
  CHECK(inv.site_count() == 2);
  // output pair is the swapped input pair
  CHECK(inv.output_pairs()[0].first == inv.input_pairs()[0].second);
  CHECK(inv.output_pairs()[0].second == inv.input_pairs()[0].first);

  auto buf = expand_dual_rail(parse_netlist("input a\noutput y\ngate buf y a\n"));
  CHECK(buf.gates().empty());
  CHECK(buf.site_count() == buf.net_count());

  auto nnd = expand_dual_rail(parse_netlist("input a b\noutput y\ngate nand y a b\n"));
  CHECK(nnd.gates().size() == 1);
  CHECK(nnd.gates()[0].kind == GateKind::And);
  CHECK(nnd.absorbed_inverters() == 1);
  auto out = simulate(nnd, {true, true});
  CHECK(out[0] == RailPair::encode(false));
}

TEST_CASE("expansion is inverter-free for any source netlist") {
  for (uint64_t seed = 100; seed < 110; ++seed) {
    auto n = testutil::random_netlist(seed, 5, 30);
    auto d = expand_dual_rail(n);
    for (const DualGate& g : d.gates()) {
      CHECK((g.kind == GateKind::And || g.kind == GateKind::Or ||
             g.kind == GateKind::Xor));
    }
  }
}

TEST_CASE("simulate examples") {
  auto n = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  auto d = expand_dual_rail(n);
  CHECK(simulate(d, {true, true}) ==
        std::vector<RailPair>{RailPair::encode(false)});

  // a_bar stuck-at-1 with a=1,b=1 gives the non-valid (1,1)
  auto site = parse_site(d, "a.lo");
  REQUIRE(site.has_value());
  InjectedFault f{*site, true};
  auto out = simulate(d, {true, true}, {&f, 1});
  CHECK(out[0] == RailPair{true, true});

  // a stuck-at-0 with a=0: the fault value equals the true value; masked
  auto site_hi = parse_site(d, "a.hi");
  REQUIRE(site_hi.has_value());
  InjectedFault f2{*site_hi, false};
  out = simulate(d, {false, false}, {&f2, 1});
  CHECK(out[0] == RailPair::encode(false));
}

TEST_CASE("site enumeration is deterministic and well-ordered") {
  auto n = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  auto d = expand_dual_rail(n);
  auto sites = enumerate_fault_sites(d);
  REQUIRE(sites.size() == 16);
  for (size_t i = 0; i < sites.size(); ++i) {
    CHECK(site_index(d, sites[i]) == i);
  }
  CHECK(site_name(d, sites[0]) == "a.hi");
  CHECK(site_name(d, sites[5]) == "y.lo");
  CHECK(site_name(d, sites[6]) == "g0.O.inv");
  CHECK(site_name(d, sites[15]) == "g0.Ob.out");

  // same netlist, same list
  auto d2 = expand_dual_rail(parse_netlist(serialize(n)));
  auto sites2 = enumerate_fault_sites(d2);
  REQUIRE(sites2.size() == sites.size());
  for (size_t i = 0; i < sites.size(); ++i) {
    CHECK(site_name(d, sites[i]) == site_name(d2, sites2[i]));
  }
}

TEST_CASE("parse_site round trip") {
  auto d = expand_dual_rail(
      parse_netlist("input a b\noutput y\ngate xor y a b\n"));
  for (const CircuitSite& s : enumerate_fault_sites(d)) {
    auto back = parse_site(d, site_name(d, s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
    auto by_index = parse_site(d, std::to_string(site_index(d, s)));
    REQUIRE(by_index.has_value());
    CHECK(*by_index == s);
  }
  CHECK_FALSE(parse_site(d, "nope").has_value());
  CHECK_FALSE(parse_site(d, "99999").has_value());
}

TEST_CASE("check_equivalence on small fixtures") {
  auto xor_n = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  CHECK_FALSE(check_equivalence(xor_n, expand_dual_rail(xor_n)).has_value());

  auto nand_n = parse_netlist("input a b\noutput y\ngate nand y a b\n");
  CHECK_FALSE(check_equivalence(nand_n, expand_dual_rail(nand_n)).has_value());
}

TEST_CASE("compilation soundness and fault-free validity on random netlists") {
  for (uint64_t seed = 7; seed < 27; ++seed) {
    auto n = testutil::random_netlist(seed, 6, 40);
    auto d = expand_dual_rail(n);
    CHECK_FALSE(check_equivalence(n, d).has_value());
    for (uint64_t v = 0; v < 64; ++v) {
      std::vector<bool> in(6);
      for (int i = 0; i < 6; ++i) in[i] = (v >> i) & 1;
      CHECK_FALSE(find_invalid_pair(d, in).has_value());
    }
  }
}

TEST_CASE("equivalence counterexample is reported") {
  // An intentionally wrong pairing: compare an AND netlist against the
  // dual-rail expansion of an OR netlist.
  auto and_n = parse_netlist("input a b\noutput y\ngate and y a b\n");
  auto or_d = expand_dual_rail(parse_netlist("input a b\noutput y\ngate or y a b\n"));
  auto cex = check_equivalence(and_n, or_d);
  REQUIRE(cex.has_value());
  // first differing vector in sweep order is a=1,b=0
  CHECK(*cex == std::vector<bool>{true, false});
}
