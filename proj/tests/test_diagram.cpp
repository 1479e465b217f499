#include <gtest/gtest.h>

#include "support.hpp"

using namespace psy;
using testing_support::corpus;
using testing_support::full_corpus;

TEST(Validate, CorpusFacesFollowEuler) {
  EXPECT_EQ(validate(corpus("3_1")).face_count, 5);
  EXPECT_EQ(validate(corpus("4_1")).face_count, 6);
  EXPECT_EQ(faces(corpus("unknot")).size(), 2u);
  EXPECT_EQ(faces(corpus("hopf_shadow")).size(), 4u);
  for (const auto& d : full_corpus()) {
    const auto r = validate(d);
    EXPECT_TRUE(r.ok) << d.name;
    const int base = d.crossing_count() == 0 ? 1 : d.crossing_count() + 2;
    EXPECT_EQ(r.face_count, base + d.free_loops) << d.name;
  }
}

TEST(Validate, DeletedEdgeIsDangling) {
  auto d = corpus("3_1");
  d.edges.pop_back();
  const auto r = validate(d);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.errors.empty());
  EXPECT_NE(r.errors.front().find("dangling"), std::string::npos);
}

TEST(Validate, DuplicatePortAndWrongEnds) {
  auto d = corpus("3_1");
  d.edges.push_back(d.edges.front());
  EXPECT_FALSE(validate(d).ok);
  auto e = corpus("3_1");
  std::swap(e.edges[0].tail, e.edges[0].head);
  EXPECT_FALSE(validate(e).ok);
}

TEST(Validate, NonPlanarRotationIsRejected) {
  // Each strand returns to its own entry slot: a single face, so not a sphere.
  const auto d = parse_diagram("pseudodiagram virtual\ncrossing 1 +\nedge 1.2 1.0\nedge 1.3 1.1\n");
  const auto r = validate(d);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.errors.empty());
  EXPECT_NE(r.errors.front().find("non-spherical"), std::string::npos);
}

TEST(Validate, DisconnectedMapIsRejected) {
  const auto k = corpus("3_1");
  Diagram two = k;
  for (const auto& c : k.crossings) two.crossings.push_back({c.id + 10, c.kind});
  for (const auto& e : k.edges)
    two.edges.push_back({Port{e.tail.crossing + 3, e.tail.slot}, Port{e.head.crossing + 3, e.head.slot}});
  EXPECT_FALSE(validate(two).ok);
}

TEST(Faces, CornersPartitionAllCorners) {
  for (const auto& d : full_corpus()) {
    const auto fs = faces(d);
    std::size_t corners = 0;
    for (const auto& r : fs) corners += r.corners.size();
    EXPECT_EQ(corners, 4u * d.crossing_count());
    const auto table = corner_regions(d, fs);
    for (const auto& row : table)
      for (int id : row) EXPECT_GE(id, 0);
  }
}

TEST(Resolve, TrefoilWithPrecrossing) {
  const auto d = corpus("3_1.3");
  ASSERT_EQ(d.precrossing_count(), 1);
  const int pre_id = d.crossings[0].id;
  const auto up = resolve(d, {{pre_id, CrossingKind::Positive}});
  EXPECT_EQ(up, [] {
    auto t = corpus("3_1");
    t.name = "3_1.3";
    return t;
  }());
  const auto down = resolve(d, {{pre_id, CrossingKind::Negative}});
  EXPECT_EQ(down.precrossing_count(), 0);
  EXPECT_EQ(count_colorings(down, testing_support::structure("X1")), 9u);
  EXPECT_THROW(resolve(d, {}), InputError);
  EXPECT_THROW(resolve(d, {{pre_id, CrossingKind::Pre}}), InputError);
  EXPECT_THROW(resolve(d, {{pre_id, CrossingKind::Positive}, {d.crossings[1].id, CrossingKind::Negative}}),
               InputError);
  const auto k = corpus("3_1");
  EXPECT_EQ(resolve(k, {}), k);
}

TEST(Resolve, FacesUnchanged) {
  for (const auto& d : full_corpus()) {
    Resolution r;
    for (const auto& c : d.crossings)
      if (c.kind == CrossingKind::Pre) r[c.id] = CrossingKind::Negative;
    const auto a = faces(d), b = faces(resolve(d, r));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].corners, b[i].corners);
  }
}

TEST(Reverse, Involution) {
  for (const auto& d : full_corpus()) {
    EXPECT_EQ(reversed(reversed(d)), d);
    EXPECT_TRUE(validate(reversed(d)).ok);
  }
}

TEST(CanonicalRotation, UniqueForTransversalPatterns) {
  int valid = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<bool, 4> in{};
    for (int i = 0; i < 4; ++i) in[i] = mask >> i & 1;
    const auto r = canonical_rotation(in);
    const int ins = __builtin_popcount(mask);
    const bool adjacent_pair = ins == 2 && mask != 0b0101 && mask != 0b1010;
    EXPECT_EQ(r.has_value(), adjacent_pair) << mask;
    if (!r) continue;
    ++valid;
    // after rotation the incoming darts sit at 0 and 1, and rotating again is a no-op
    std::array<bool, 4> rotated{};
    for (int i = 0; i < 4; ++i) rotated[i] = in[(i + *r) % 4];
    EXPECT_TRUE(rotated[0] && rotated[1] && !rotated[2] && !rotated[3]);
    EXPECT_EQ(canonical_rotation(rotated), 0);
  }
  EXPECT_EQ(valid, 4);
}

TEST(Components, CountsAndLinking) {
  EXPECT_EQ(components(corpus("3_1")).count, 1);
  EXPECT_EQ(components(corpus("hopf_shadow")).count, 2);
  EXPECT_EQ(components(corpus("unknot")).count, 1);
  const auto hopf = corpus("hopf_shadow");
  const int a = hopf.crossings[0].id, b = hopf.crossings[1].id;
  using K = CrossingKind;
  EXPECT_EQ(linking_numbers(resolve(hopf, {{a, K::Positive}, {b, K::Positive}})), std::vector<int>{1});
  EXPECT_EQ(linking_numbers(resolve(hopf, {{a, K::Negative}, {b, K::Negative}})), std::vector<int>{-1});
  EXPECT_EQ(linking_numbers(resolve(hopf, {{a, K::Positive}, {b, K::Negative}})), std::vector<int>{0});
}

TEST(Isomorphic, RelabelingIds) {
  const auto d = corpus("5_2");
  Diagram e = d;
  std::reverse(e.crossings.begin(), e.crossings.end());
  const int v = d.crossing_count();
  for (auto& edge : e.edges) {
    edge.tail.crossing = v - 1 - edge.tail.crossing;
    edge.head.crossing = v - 1 - edge.head.crossing;
  }
  for (auto& c : e.crossings) c.id += 100;
  canonicalize(e);
  EXPECT_TRUE(isomorphic(d, e));
  e.crossings[0].kind = CrossingKind::Pre;
  EXPECT_FALSE(isomorphic(d, e));
  EXPECT_FALSE(isomorphic(corpus("5_1"), corpus("5_2")));
}

TEST(PkdFormat, RoundTripOnCorpusFiles) {
  for (const auto& dir : {"corpus", "corpus/masks"})
    for (const auto& p : testing_support::pkd_files(dir)) {
      const auto text = read_text_file(p.string());
      const auto d = parse_diagram(text);
      EXPECT_EQ(serialize_diagram(d), text) << p;
      EXPECT_EQ(parse_diagram(serialize_diagram(d)), d);
    }
}

TEST(PkdFormat, ParsesCorpusBasics) {
  const auto u = corpus("unknot");
  EXPECT_EQ(u.crossing_count(), 0);
  EXPECT_EQ(u.free_loops, 1);
  const auto t = corpus("3_1");
  EXPECT_EQ(t.crossing_count(), 3);
  for (const auto& c : t.crossings) EXPECT_EQ(c.kind, CrossingKind::Positive);
  EXPECT_TRUE(validate(t).ok);
}

TEST(PkdFormat, CommentsAndPrecrossingSymbol) {
  const std::string text =
      "# leading comment\n"
      "pseudodiagram kink   # trailing\n"
      "  # indented comment\n"
      "crossing 7 #\n"
      "crossing 8 # # a precrossing\n"
      "edge 7.2 8.1\nedge 7.3 8.0\nedge 8.2 7.1\nedge 8.3 7.0\n";
  const auto d = parse_diagram(text);
  EXPECT_EQ(d.name, "kink");
  ASSERT_EQ(d.crossing_count(), 2);
  EXPECT_EQ(d.crossings[0].kind, CrossingKind::Pre);
  EXPECT_EQ(d.crossings[1].kind, CrossingKind::Pre);
  EXPECT_TRUE(validate(d).ok);
}

TEST(PkdFormat, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_diagram(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("crossing 1 +\n"), 1);
  EXPECT_EQ(line_of("pseudodiagram x\ncrossing 1 *\n"), 2);
  EXPECT_EQ(line_of("pseudodiagram x\ncrossing 1 +\nedge 1.1 1.0\n"), 3);
  EXPECT_EQ(line_of("pseudodiagram x\ncrossing 1 +\nedge 1.2 1.3\n"), 3);
  EXPECT_EQ(line_of("pseudodiagram x\ncrossing 1 +\n\nedge 1.2 2.0\n"), 4);
  EXPECT_EQ(line_of("pseudodiagram x\nloops -1\n"), 2);
  EXPECT_EQ(line_of("pseudodiagram x\nfoo\n"), 2);
  EXPECT_EQ(line_of("pseudodiagram x\ncrossing 1 + extra\n"), 2);
  EXPECT_EQ(line_of("pseudodiagram x\ncrossing 1 +\ncrossing 1 -\n"), 3);
  EXPECT_EQ(line_of(""), 1);
}

TEST(PkdFormat, SemanticErrorsDeferredToValidate) {
  const auto d = parse_diagram(read_text_file(std::string(PSY_DATA_DIR) + "/../tests/data/broken.pkd"));
  const auto r = validate(d);
  EXPECT_FALSE(r.ok);
}
