#include "tileforge/io.hpp"

#include "doctest.h"

using namespace tileforge;

namespace {

Element el(std::initializer_list<i64> free, std::initializer_list<i64> torsion) {
    return Element{std::vector<i64>(free), std::vector<i64>(torsion)};
}

std::string golden_path(const std::string& name) { return std::string(TILEFORGE_GOLDEN_DIR) + "/" + name; }

}  // namespace

TEST_CASE("board files round-trip byte-identically") {
    PadicParams p3 = PadicParams::make(3);
    Board minimal(p3, {5, 5});
    for (i64 n = 1; n <= 9; ++n) minimal.set_cell(n, 5, 1 + n % 2);
    std::string text = write_board(minimal);
    CHECK(text.substr(0, 29) == "board v1 p=3 N=9 mlo=5 mhi=5\n");
    Board back = parse_board(text);
    CHECK(back == minimal);
    CHECK(write_board(back) == text);

    Board gen = generate_affine_board(PadicParams::make(5), {0, 30}, 1, 2, 3);
    Board gen_back = parse_board(write_board(gen));
    CHECK(gen_back == gen);
    CHECK(gen_back.gen() == GenParams{1, 2, 3});
}

TEST_CASE("board parse rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_board("board v1 p=3 N=9 mlo=0 mhi=0\n0 1 1 1 1 1 1 1 1\n"),
                         "board value out of range", std::invalid_argument);
    CHECK_THROWS_AS(parse_board("board v2 p=3 N=9 mlo=0 mhi=0\n1 1 1 1 1 1 1 1 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_board("board v1 p=3 N=9 mlo=0 mhi=0\n1 1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_board("board v1 p=3 N=8 mlo=0 mhi=0\n1 1 1 1 1 1 1 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_board(""), std::invalid_argument);
}

TEST_CASE("line files round-trip") {
    PadicParams p5 = PadicParams::make(5);
    LineValues values;
    for (i64 n = 1; n <= 25; ++n) values.push_back(final_digit(5, n));
    std::string text = write_line(p5, values);
    auto [params, back] = parse_line(text, 2);
    CHECK(params.p == 5);
    CHECK(back == values);
    CHECK(write_line(params, back) == text);
}

TEST_CASE("instance files round-trip") {
    GroupSpec z(1, {});
    TilingInstance inst;
    inst.group = z;
    inst.lattice = Lattice(1, {6});
    inst.residues = {el({0}, {}), el({3}, {})};
    inst.tiles.push_back(Tile::make(z, {el({0}, {}), el({1}, {}), el({2}, {})}));
    inst.tiles.push_back(Tile::make(z, {el({0}, {}), el({2}, {}), el({4}, {})}));
    std::string text = write_instance(inst);
    TilingInstance back = parse_instance(text);
    CHECK(back.group == inst.group);
    CHECK(back.lattice->hnf() == inst.lattice->hnf());
    CHECK(back.residues == inst.residues);
    CHECK(back.tiles.size() == 2);
    CHECK(write_instance(back) == text);
    auto a = back.candidate();
    REQUIRE(a.has_value());
    CHECK(verify_tiling(*a, back.tiles).ok);

    // finite instance
    GroupSpec z6(0, {6});
    TilingInstance fin;
    fin.group = z6;
    fin.residues = {el({}, {0}), el({}, {3})};
    fin.tiles.push_back(Tile::make(z6, {el({}, {0}), el({}, {1}), el({}, {2})}));
    TilingInstance fin_back = parse_instance(write_instance(fin));
    CHECK(fin_back.group == z6);
    CHECK(!fin_back.lattice.has_value());
    CHECK(verify_tiling(*fin_back.candidate(), fin_back.tiles).ok);
}

TEST_CASE("partition files round-trip") {
    GroupSpec h(0, {7, 7});
    auto found = find_intersective_partition(h, 2, 5, 1000000);
    REQUIRE(found.partition.has_value());
    std::string text = write_partition(*found.partition);
    Partition back = parse_partition(text);
    CHECK(back.group == h);
    CHECK(back.parts == found.partition->parts);
    CHECK(write_partition(back) == text);
}

TEST_CASE("ascii render shape and content") {
    PadicParams p3 = PadicParams::make(3);
    Board b = generate_affine_board(p3, {0, 2}, 0, 1, 0);
    std::string art = render_ascii(b);
    // 3 lines of 9 glyphs, top row is m = 2
    CHECK(art == "222222222\n111111111\n111111111\n");

    Board constant = generate_affine_board(p3, {0, 2}, 0, 0, 2);
    CHECK(render_ascii(constant) == "222222222\n222222222\n222222222\n");
}

TEST_CASE("renders match the frozen golden files") {
    PadicParams p5 = PadicParams::make(5);
    Board banded = generate_affine_board(p5, {0, 24}, 0, 1, 0);
    CHECK(render_pgm(banded) == read_file(golden_path("banded_p5.pgm")));
    CHECK(render_ascii(banded) == read_file(golden_path("banded_p5.txt")));

    // a board without generator metadata shades by raw value
    Board plain = parse_board(write_board(banded));
    plain.set_gen(std::nullopt);
    CHECK(render_pgm(plain) == read_file(golden_path("plain_p5.pgm")));
}

TEST_CASE("reports and renders are deterministic") {
    PadicParams p5 = PadicParams::make(5);
    Board b = generate_affine_board(p5, {0, 60}, 2, 3, 1);
    CHECK(write_board(b) == write_board(b));
    CHECK(render_pgm(b) == render_pgm(b));
    GroupSpec h(0, {7, 7});
    auto f1 = find_intersective_partition(h, 2, 123, 1000000);
    auto f2 = find_intersective_partition(h, 2, 123, 1000000);
    REQUIRE(f1.partition.has_value());
    CHECK(write_partition(*f1.partition) == write_partition(*f2.partition));
}
