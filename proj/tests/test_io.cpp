#include <catch_amalgamated.hpp>

#include <distcat/io.hpp>
#include <distcat/models.hpp>

using namespace distcat;

namespace {

std::string data(const std::string& name) { return std::string(DISTCAT_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("categories load and round-trip", "[io]") {
  const auto one = io::load_category(data("terminal.json"));
  CHECK(one.object_count() == 1);
  CHECK(one.morphism_count() == 1);
  CHECK(validate_category(one).passed());

  const auto arrow = io::load_category(data("arrow.json"));
  CHECK(validate_category(arrow).passed());
  CHECK(arrow.hom_count(arrow.object("a"), arrow.object("b")) == 1);

  for (const auto& cat : {categories::parallel_pair(), categories::involution(), arrow}) {
    const auto back = io::category_from_json(io::category_to_json(cat));
    CHECK(back == cat);
  }
}

TEST_CASE("broken inputs", "[io]") {
  CHECK_THROWS_AS(io::read_json_file(data("truncated.json")), MalformedInput);
  CHECK_THROWS_AS(io::read_json_file(data("does_not_exist.json")), MalformedInput);
  const auto broken = io::load_category(data("broken_associativity.json"));
  CHECK_FALSE(validate_category(broken).passed());

  using json = io::json;
  CHECK_THROWS_AS(io::category_from_json(json::parse(R"j({"morphisms": []})j")), MalformedInput);
  CHECK_THROWS_AS(io::category_from_json(json::parse(R"j({"objects": ["a", "a"]})j")), MalformedInput);
  CHECK_THROWS_AS(io::category_from_json(json::parse(R"j({"objects": [1]})j")), MalformedInput);
  CHECK_THROWS_AS(
      io::category_from_json(json::parse(R"j({"objects": ["a"], "morphisms": [{"id": "f", "src": "a", "dst": "z"}]})j")),
      MalformedInput);
}

TEST_CASE("Dist objects", "[io]") {
  const auto one = categories::terminal();
  const auto x = io::load_dist_object(one, data("one_two.json"));
  CHECK(x.shape_count() == 1);
  CHECK(x.position_count(0) == 2);
  CHECK(io::dist_object_from_json(one, io::dist_object_to_json(one, x)) == x);
  CHECK(io::load_dist_object(one, data("terminal_object.json")).position_count(0) == 0);
  CHECK(io::load_dist_object(one, data("initial_object.json")).shape_count() == 0);

  using json = io::json;
  // Missing entry, stray entry, unknown base object.
  CHECK_THROWS_AS(io::dist_object_from_json(one, json::parse(R"j({"outer": ["s"], "inner": {"s": ["p"]}, "entries": {}})j")),
                  MalformedInput);
  CHECK_THROWS_AS(io::dist_object_from_json(
                      one, json::parse(R"j({"outer": [], "inner": {}, "entries": {"(s,p)": "*"}})j")),
                  MalformedInput);
  CHECK_THROWS_AS(io::dist_object_from_json(
                      one, json::parse(R"j({"outer": ["s"], "inner": {"s": ["p"]}, "entries": {"(s,p)": "q"}})j")),
                  MalformedInput);
  CHECK_THROWS_AS(io::dist_object_from_json(one, json::parse(R"j({"outer": ["s", "s"], "inner": {"s": []}, "entries": {}})j")),
                  MalformedInput);
}

TEST_CASE("Dist morphisms round-trip", "[io]") {
  const auto base = categories::arrow();
  const Dist<PresentedCategory> dist(base);
  const auto objs = generate_dist_objects<PresentedCategory>(base.objects(), {2, 1}, true);
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& f : dist.hom(x, y)) CHECK(io::dist_morphism_from_json(base, io::dist_morphism_to_json(base, f)) == f);

  // A table with a component of the wrong type.
  Dist<PresentedCategory>::Object x;
  x.add_shape("s", {"p"}, {base.object("b")});
  Dist<PresentedCategory>::Object y;
  y.add_shape("t", {"q"}, {base.object("b")});
  auto j = io::dist_morphism_to_json(base, dist.identity(x));
  j["dst"] = io::dist_object_to_json(base, y);
  j["table"]["s"] = {{"target", "t"}, {"inner", {{"q", {{"source", "p"}, {"morphism", "f"}}}}}};
  CHECK_THROWS_AS(io::dist_morphism_from_json(base, j), MalformedInput);
}

TEST_CASE("lattices and families", "[io]") {
  const auto m3 = io::lattice_from_json(io::read_json_file(data("m3.json")));
  CHECK(m3.size() == 5);
  CHECK(io::lattice_from_json(io::lattice_to_json(m3)).order_pairs() == m3.order_pairs());
  CHECK_THROWS_AS(io::lattice_from_json(io::read_json_file(data("not_a_lattice.json"))), NotALattice);
  CHECK_THROWS_AS(io::lattice_from_json(io::json::parse(R"j({"elements": ["a"], "leq": [["a"]]})j")), MalformedInput);

  const auto fam = io::family_from_json<std::size_t>(io::read_json_file(data("family_nine.json")),
                                                     [](const io::json& e) { return io::finset_spec(e); });
  CHECK(fam.outer == std::vector<std::string>{"1", "2"});
  CHECK(fam.entries == std::vector<std::vector<std::size_t>>{{1, 2}, {1, 1, 1}});
  const auto back = io::family_to_json(fam, [](std::size_t n) { return n; });
  CHECK(io::family_from_json<std::size_t>(back, [](const io::json& e) { return io::finset_spec(e); }) == fam);
  CHECK_THROWS_AS(io::finset_spec(io::json(-1)), MalformedInput);
  CHECK_THROWS_AS(io::finset_spec(io::json("2")), MalformedInput);
}
