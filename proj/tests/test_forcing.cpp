#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kripkelab/axiomlab.hpp"
#include "kripkelab/errors.hpp"
#include "kripkelab/forcing.hpp"
#include "oracle.hpp"

using namespace kripkelab;

namespace {

constexpr NodeId n0{0}, n1{1}, n2{2};

GridPair c(std::uint32_t m, std::uint32_t n) { return GridPair{m, n}; }

std::map<unsigned, bool> cells_of(const Condition& p) {
  std::map<unsigned, bool> out;
  for (auto [cell, bit] : p.assignments()) out[cell.row * p.grid() + cell.col] = bit;
  return out;
}

std::vector<unsigned> cells_of(const PairSet& r, unsigned k) {
  std::vector<unsigned> out;
  for (GridPair g : r) out.push_back(g.row * k + g.col);
  return out;
}

PairSet full_grid(std::uint32_t k) {
  PairSet out;
  for (std::uint32_t m = 0; m < k; ++m) {
    for (std::uint32_t n = 0; n < k; ++n) out.push_back(c(m, n));
  }
  return out;
}

// Total relations on the K grid, as cell lists.
std::vector<PairSet> total_relations(unsigned k) {
  std::vector<PairSet> out;
  for (std::uint32_t g : oracle::total_graphs(k)) {
    PairSet r;
    for (unsigned cell = 0; cell < k * k; ++cell) {
      if ((g >> cell) & 1) r.push_back(c(cell / k, cell % k));
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("extend and the order on conditions") {
  const Condition empty(2);
  const Condition one = extend(empty, c(0, 0), true);
  CHECK(one.size() == 1);
  CHECK(one.get(c(0, 0)) == true);
  CHECK(extends(one, empty));
  CHECK_FALSE(extends(empty, one));
  CHECK(extend(one, c(0, 0), true) == one);
  CHECK_THROWS_AS(extend(one, c(0, 0), false), IncompatibleError);
  CHECK_THROWS_AS(extend(empty, c(2, 0), true), RangeError);

  const Condition two = extend(one, c(1, 1), false);
  CHECK(extends(two, one));
  CHECK(extends(two, empty));
}

TEST_CASE("property: order laws on all small conditions") {
  const auto all = conditions_up_to(2, 4);
  CHECK(all.size() == 81);  // 3^4
  CHECK(conditions_up_to(2, 1).size() == 9);
  for (const Condition& p : all) {
    CHECK(extends(p, p));
    for (const Condition& q : all) {
      if (extends(p, q) && extends(q, p)) CHECK(p == q);
      if (!compatible(p, q)) {
        CHECK_THROWS_AS(join(p, q), IncompatibleError);
        continue;
      }
      const Condition j = join(p, q);
      CHECK(extends(j, p));
      CHECK(extends(j, q));
      CHECK(j.size() <= p.size() + q.size());
    }
  }
  // transitivity on a sample
  for (std::size_t i = 0; i < all.size(); i += 7) {
    for (std::size_t j = 0; j < all.size(); j += 5) {
      for (std::size_t k = 0; k < all.size(); k += 3) {
        if (extends(all[i], all[j]) && extends(all[j], all[k])) CHECK(extends(all[i], all[k]));
      }
    }
  }
}

TEST_CASE("density_kill_subrelation") {
  const PairSet r{c(0, 1), c(1, 0)};
  const Condition q = density_kill_subrelation(Condition(2), r);
  CHECK(render(q) == "(0,1)=0");
  const Condition p = parse_condition("(0,1)=1", 2);
  CHECK(render(density_kill_subrelation(p, r)) == "(0,1)=1,(1,0)=0");
  CHECK_THROWS_AS(density_kill_subrelation(parse_condition("(0,1)=1,(1,0)=1", 2), r),
                  NoRoomError);
}

TEST_CASE("property: every kill extension is verified by enumerating completions") {
  for (unsigned k : {2u, 3u}) {
    CAPTURE(k);
    const auto family = conditions_up_to(k, k == 2 ? 4 : 2);
    const auto relations = total_relations(k);
    std::size_t kills = 0, failures = 0;
    for (const PairSet& r : relations) {
      for (const Condition& p : family) {
        const bool eligible =
            std::any_of(r.begin(), r.end(), [&](GridPair g) { return !p.assigns(g); });
        if (!eligible) {
          CHECK_THROWS_AS(density_kill_subrelation(p, r), NoRoomError);
          continue;
        }
        const Condition q = density_kill_subrelation(p, r);
        ++kills;
        if (!extends(q, p) || q.size() != p.size() + 1 ||
            !oracle::kills(k, cells_of(q), cells_of(r, k))) {
          ++failures;
        }
      }
    }
    CHECK(kills > 0);
    CHECK(failures == 0);
  }
}

TEST_CASE("density_totality") {
  CHECK(render(density_totality(Condition(2), 0)) == "(0,0)=1");
  CHECK(render(density_totality(parse_condition("(0,0)=0", 2), 0)) == "(0,0)=0,(0,1)=1");
  CHECK_THROWS_AS(density_totality(parse_condition("(0,0)=0,(0,1)=0", 2), 0), GridTooSmallError);
  const Condition has = parse_condition("(0,1)=1", 2);
  CHECK(density_totality(has, 0) == has);
  CHECK(render(density_totality_column(Condition(2), 1)) == "(0,1)=1");
  CHECK_THROWS_AS(density_totality_column(parse_condition("(0,1)=0,(1,1)=0", 2), 1),
                  GridTooSmallError);
}

TEST_CASE("condition and pair literals") {
  const Condition p = parse_condition(" (1,0)=1, (0,1)=0 ", 2);
  CHECK(render(p) == "(0,1)=0,(1,0)=1");
  CHECK(parse_condition(render(p), 2) == p);
  CHECK(parse_condition("", 2).size() == 0);
  CHECK_THROWS_AS(parse_condition("(0,0)=2", 2), ParseError);
  CHECK_THROWS_AS(parse_condition("(0,0)=1,(0,0)=0", 2), IncompatibleError);
  CHECK_THROWS_AS(parse_condition("(0,5)=1", 2), RangeError);
  CHECK_THROWS_AS(parse_condition("(0,0)", 2), ParseError);
  CHECK(parse_pairs("(0,1),(1,0)") == PairSet{c(0, 1), c(1, 0)});
}

TEST_CASE("sample_generic") {
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    for (std::uint32_t k : {1u, 2u, 3u, 5u}) {
      const GenericSample s = sample_generic(seed, k);
      CHECK(is_bitotal(s));
      CHECK(s == sample_generic(seed, k));
    }
  }
  const GenericSample a = sample_generic(1, 4), b = sample_generic(2, 4);
  CHECK(a.bits.size() == 16);
  const std::string text = dump(a);
  CHECK(text.substr(0, 2) == "4\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(a != b);

  const std::vector<Requirement> contradiction = {requirement::Preassign{c(0, 0), false},
                                                  requirement::Preassign{c(0, 1), false}};
  CHECK_THROWS_AS(sample_generic(0, 2, contradiction), SaturationError);

  const PairSet r{c(0, 0), c(1, 1)};
  const GenericSample killed = sample_generic(3, 2, {requirement::KillSubrelation{r}});
  CHECK_FALSE((killed.bit(0, 0) && killed.bit(1, 1)));
  CHECK(is_bitotal(killed));
  CHECK_FALSE(killed.requirements_met.empty());
  CHECK(killed.relation().size() >= 2);
}

TEST_CASE("generic term") {
  Universe u = build_universe(make_chain(3), 1);
  const GenericSample s = sample_generic(5, 2);
  const SetId full_at_bottom = build_generic_term(u, s, n0);
  for (NodeId n : {n0, n1, n2}) CHECK(decode_relation(u, full_at_bottom, n, 2) == full_grid(2));

  const SetId g = build_generic_term(u, s, n2);
  CHECK(decode_relation(u, g, n0, 2) == s.relation());
  CHECK(decode_relation(u, g, n1, 2) == s.relation());
  CHECK(decode_relation(u, g, n2, 2) == full_grid(2));
  const SetId two = numeral(u, 2);
  for (NodeId n : {n0, n1, n2}) {
    CHECK(forces(u, {}, n,
                 shapes::total_relation(Term::parameter(g), Term::parameter(two),
                                        Term::parameter(two))));
  }
  CHECK(grid_pair_ids(u, 2).size() == 4);
  CHECK_THROWS_AS(decode_relation(u, two, n0, 2), StructureError);
  u.validate();
}

TEST_CASE("check_no_total_subrelation") {
  Universe u = build_universe(make_chain(3), 1);
  const SetId two = numeral(u, 2);
  const auto candidates = constant_total_relations(u, two, two);
  REQUIRE(candidates.size() == 9);
  const CheckReport r = check_no_total_subrelation(u, sample_generic(0, 2), n2, candidates, 4);
  CHECK(r.status == Status::pass);

  // a sample built to contain a given R reports it
  const PairSet target = decode_relation(u, candidates[4], n0, 2);
  std::vector<Requirement> reqs;
  for (GridPair g : target) reqs.push_back(requirement::Preassign{g, true});
  const GenericSample rigged = sample_generic(0, 2, reqs);
  const auto found = sample_subrelations(u, rigged, n2, candidates);
  CHECK(std::find(found.begin(), found.end(), candidates[4]) != found.end());

  Universe w = build_universe(make_chain(2), 1);
  const SetId three = numeral(w, 3);
  const auto cands3 = constant_total_relations(w, three, three);
  CHECK(cands3.size() == 343);
  for (std::uint64_t seed : {1u, 2u}) {
    CHECK(check_no_total_subrelation(w, sample_generic(seed, 3), n1, cands3, 2).status ==
          Status::pass);
  }
}

TEST_CASE("function rigidity") {
  Universe u = build_universe(make_chain(2), 1);
  const SetId two = numeral(u, 2);
  const auto rels = enumerate_eventually_total_relations(u, two, two);
  std::size_t applicable = 0, inclusions = 0;
  for (NodeId n : {n0, n1}) {
    for (SetId f : rels) {
      for (SetId g : rels) {
        const CheckReport r = check_function_rigidity(u, two, two, f, g, n);
        CHECK(r.status != Status::fail);
        if (r.status == Status::pass) {
          ++applicable;
          if (forces(u, {}, n, shapes::subset(Term::parameter(f), Term::parameter(g)))) {
            ++inclusions;
            CHECK(eq_forced(u, n, f, g));
          }
        }
      }
    }
  }
  CHECK(applicable > 0);
  CHECK(inclusions > 0);

  // a function against a strictly larger relation that is not single-valued
  const SetId zero = numeral(u, 0), one = numeral(u, 1);
  const SetId f = build_pair(u, kuratowski(u, zero, zero), kuratowski(u, one, zero));
  const SetId g = insert(u, constant_extent(u, {kuratowski(u, zero, zero), kuratowski(u, zero, one),
                                                kuratowski(u, one, zero)}));
  CHECK(check_function_rigidity(u, two, two, f, f, n0).status == Status::pass);
  CHECK(check_function_rigidity(u, two, two, f, g, n0).status == Status::vacuous);
}
