#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "qcover/io.hpp"
#include "qcover/klein.hpp"
#include "qcover/verify.hpp"

using namespace qcover;

TEST_CASE("qcd round trip is byte-identical and verification-equivalent") {
    auto F = Field::make(2, 1);
    Design D = build_design_632(F);
    std::string text = qcd_to_string(F, D);
    QcdFile parsed = qcd_from_string(text);
    CHECK(parsed.q == 2);
    CHECK(parsed.p == 2);
    CHECK(parsed.e == 1);
    CHECK(parsed.design.family == D.family);
    REQUIRE(parsed.design.blocks.size() == D.blocks.size());
    for (size_t i = 0; i < D.blocks.size(); ++i) REQUIRE(parsed.design.blocks[i] == D.blocks[i]);
    CHECK_NOTHROW(qcd_validate(F, parsed.design));

    // rewriting the parsed design reproduces the bytes
    CHECK(qcd_to_string(F, parsed.design) == text);

    // verification of the parsed design matches the in-memory one
    auto a = verify_covering(F, D);
    auto b = verify_covering(F, parsed.design);
    CHECK(a.covered == b.covered);
    CHECK(a.histogram == b.histogram);
}

TEST_CASE("qcd gzip round trip through a file") {
    auto F = Field::make(2, 1);
    Design D = build_design_632(F);
    auto dir = std::filesystem::temp_directory_path();
    std::string plain = (dir / "qcover_io_test.qcd").string();
    std::string gz = (dir / "qcover_io_test.qcd.gz").string();
    write_qcd(plain, F, D);
    write_qcd(gz, F, D);
    CHECK(read_file(plain) == read_file(gz)); // transparent decompression
    auto parsed = read_qcd(gz);
    CHECK(parsed.design.blocks.size() == D.blocks.size());
    std::remove(plain.c_str());
    std::remove(gz.c_str());
}

TEST_CASE("qcd parse failures") {
    CHECK_THROWS_AS(qcd_from_string("qcd 2\n"), std::runtime_error);
    CHECK_THROWS_AS(qcd_from_string(""), std::runtime_error);
    CHECK_THROWS_AS(qcd_from_string("qcd 1\nq 2 p 2 e 1 modulus 01\nn 6 k 3 r 2\nfamily x\nblocks 2\nff\n"),
                    std::runtime_error); // truncated body

    // a record that is not canonical RREF fails validation
    auto F = Field::make(2, 1);
    std::string text =
        "qcd 1\nq 2 p 2 e 1 modulus 01\nn 4 k 2 r 2\nfamily x\nblocks 1\n" +
        key_hex(Subspace{4, [] {
                    Mat m(2, 4);
                    m.at(0, 3) = 1; // rows in the wrong order: pivots decrease
                    m.at(1, 0) = 1;
                    return m;
                }()},
                2) +
        "\n";
    auto parsed = qcd_from_string(text);
    CHECK_THROWS_AS(qcd_validate(F, parsed.design), std::runtime_error);
}
