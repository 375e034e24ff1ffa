#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "mchom/families.hpp"
#include "mchom/simplicial.hpp"

using namespace mchom;

TEST_CASE("block construction and order") {
  Block b = Block::from_elements({3, 1});
  CHECK(b.elements() == std::vector<int>{1, 3});
  CHECK(b.size() == 2);
  // Larger blocks come first; equal sizes break ties toward the block owning
  // the smallest element where they differ.
  CHECK(vertex_compare(Block::from_elements({1, 2, 3}), Block::from_elements({4, 5})) < 0);
  CHECK(vertex_compare(Block::from_elements({1, 4}), Block::from_elements({2, 3})) < 0);
  CHECK(vertex_compare(Block::from_elements({1}), Block::from_elements({2})) < 0);
  CHECK(vertex_compare(Block::from_elements({2}), Block::from_elements({2})) == 0);
}

TEST_CASE("face parse, orientation, shape") {
  Face f = Face::parse("1,2|3,4");
  CHECK(f.dimension() == 1);
  CHECK(f.to_string() == "1,2|3,4");
  CHECK(f.shape() == IntegerPartition({2, 2}));
  // Blocks are stored in the global vertex order regardless of input order.
  Face g = Face::parse("3,4|1,2");
  CHECK(f == g);
  Face mixed = Face::parse("5|1,2,3");
  CHECK(mixed.block(0).elements() == std::vector<int>{1, 2, 3});
  CHECK(mixed.block(1).elements() == std::vector<int>{5});
  CHECK(Face{}.dimension() == -1);
  CHECK_FALSE(Face::parse("1,2|2,3").blocks_disjoint());
  CHECK(Face::parse("1,2|3,4").blocks_disjoint());
  CHECK_THROWS_AS(Face::parse("1,2|1,2"), std::invalid_argument);
}

TEST_CASE("face sub-face helpers") {
  Face f = Face::parse("1|2,3|4,5,6");
  Face w = f.without(1);
  CHECK(w.dimension() == 1);
  CHECK_FALSE(w.contains_face(Face({Block::from_elements({2, 3})})));
  CHECK(f.contains_face(w));
  CHECK(f.contains_face(Face{}));
  CHECK_FALSE(w.contains_face(f));
}

TEST_CASE("X(4) face counts by dimension") {
  Complex X = build_X(4);
  CHECK(X.ground_size() == 4);
  CHECK(X.dimension() == 3);
  CHECK(X.face_count(0) == 14);  // 2^4 - 2 proper nonempty subsets
  CHECK(X.face_count(1) == 25);
  CHECK(X.face_count(2) == 10);
  CHECK(X.face_count(3) == 1);   // 1|2|3|4
  CHECK(X.face_count(-1) == 1);  // the empty face
  CHECK(X.facets().size() == 14);  // Bell(4) - 1 partitions into >= 2 blocks
}

TEST_CASE("X(8) face counts by dimension") {
  Complex X = build_X(8);
  const long counts[] = {254, 3025, 7770, 6951, 2646, 462, 36, 1};
  for (int q = 0; q <= 7; ++q) CHECK(X.face_count(q) == counts[q]);
  CHECK(X.dimension() == 7);
}

TEST_CASE("face membership and indexing") {
  Complex X = build_X(4);
  CHECK(X.is_face(Face::parse("1,2|3,4")));
  CHECK(X.is_face(Face::parse("1|3")));
  CHECK_FALSE(X.is_face(Face::parse("1,2,3,4")));  // the full set is removed
  CHECK(X.is_face(Face{}));
  std::optional<long> idx = X.face_index(Face::parse("1,2|3,4"));
  REQUIRE(idx.has_value());
  CHECK(X.faces_of_dimension(1)[static_cast<std::size_t>(*idx)] == Face::parse("1,2|3,4"));
  CHECK_FALSE(X.face_index(Face::parse("1,2,3,4")).has_value());
}

TEST_CASE("boundary squares to zero") {
  for (int n : {3, 4, 5}) {
    Complex X = build_X(n);
    for (int q = 1; q <= X.dimension(); ++q) {
      IntMatrix dd = X.boundary_matrix(q).multiply(X.boundary_matrix(q + 1));
      for (long i = 0; i < dd.rows(); ++i)
        for (long j = 0; j < dd.cols(); ++j) REQUIRE(dd.get(i, j) == 0);
    }
  }
}

TEST_CASE("augmentation row") {
  Complex X = build_X(3);
  IntMatrix d0 = X.boundary_matrix(0);
  CHECK(d0.rows() == 1);
  CHECK(d0.cols() == X.face_count(0));
  for (long j = 0; j < d0.cols(); ++j) CHECK(d0.get(0, j) == 1);
}

TEST_CASE("boundary signs alternate over a 2-face") {
  Complex X = build_X(4);
  Face f = Face::parse("1|2|3,4");
  CHECK(f.dimension() == 2);
  std::optional<long> col = X.face_index(f);
  REQUIRE(col.has_value());
  IntMatrix d = X.boundary_matrix(2);
  // d f = sum_i (-1)^i (f minus its i-th block in vertex order).
  for (int i = 0; i <= 2; ++i) {
    std::optional<long> row = X.face_index(f.without(i));
    REQUIRE(row.has_value());
    CHECK(d.get(*row, *col) == (i % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("euler characteristics") {
  CHECK(build_X(3).euler_characteristic_reduced() == 0);   // acyclic
  CHECK(build_X(4).euler_characteristic_reduced() == -3);  // rank 3 in odd degree
  CHECK(build_X(5).euler_characteristic_reduced() == -10);
}

TEST_CASE("connected components with and without the full vertex") {
  CHECK(build_X(4).connected_components() == 1);
  CHECK(build_X_bar(4).connected_components() == 2);  // [n] sits isolated
  CHECK(build_X_bar(4).face_count(0) == 15);
}

TEST_CASE("facet file round trip") {
  Complex X = build_X(4);
  std::string path = "test_x4_facets.tmp";
  {
    std::ofstream out(path);
    for (const Face& f : X.facets()) out << f.to_string() << "\n";
  }
  Complex back = read_facets_file(path, 4);
  CHECK(back.ground_size() == 4);
  CHECK(back.facets().size() == X.facets().size());
  for (int q = -1; q <= X.dimension(); ++q) CHECK(back.face_count(q) == X.face_count(q));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_facets_file("does_not_exist.facets"), std::runtime_error);
}
