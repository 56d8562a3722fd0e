#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "streamfarm/sw/fasta.hpp"

using streamfarm::sw::FastaError;
using streamfarm::sw::parse_fasta;
using streamfarm::sw::parse_fasta_stream;
using streamfarm::sw::Sequence;

TEST_SUITE("fasta") {

TEST_CASE("single record") {
    std::istringstream in(">seq1 a human protein\nMKTAY\n");
    const auto seqs = parse_fasta_stream(in, "mem");
    REQUIRE(seqs.size() == 1);
    CHECK(seqs[0].name == "seq1");  // description after the first space dropped
    CHECK(seqs[0].residues == "MKTAY");
}

TEST_CASE("multi-line bodies concatenate; blank lines are skipped") {
    std::istringstream in(
        ">a\n"
        "MKT\n"
        "\n"
        "AYI\n"
        ">b\n"
        "WW\n");
    const auto seqs = parse_fasta_stream(in, "mem");
    REQUIRE(seqs.size() == 2);
    CHECK(seqs[0].residues == "MKTAYI");
    CHECK(seqs[1].name == "b");
    CHECK(seqs[1].residues == "WW");
}

TEST_CASE("carriage returns are stripped") {
    std::istringstream in(">a desc\r\nMKT\r\nAY\r\n");
    const auto seqs = parse_fasta_stream(in, "mem");
    REQUIRE(seqs.size() == 1);
    CHECK(seqs[0].name == "a");
    CHECK(seqs[0].residues == "MKTAY");
}

TEST_CASE("missing trailing newline still closes the last record") {
    std::istringstream in(">a\nMKT");
    const auto seqs = parse_fasta_stream(in, "mem");
    REQUIRE(seqs.size() == 1);
    CHECK(seqs[0].residues == "MKT");
}

TEST_CASE("data before the first header is an error with a line number") {
    std::istringstream in("MKT\n>a\nMKT\n");
    try {
        parse_fasta_stream(in, "origin.fa");
        FAIL("expected FastaError");
    } catch (const FastaError& e) {
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("origin.fa:1") != std::string::npos);
    }
}

TEST_CASE("a header with an empty name is an error") {
    std::istringstream bare(">\nMKT\n");
    CHECK_THROWS_AS(parse_fasta_stream(bare, "mem"), FastaError);
    std::istringstream spaced("> only description\nMKT\n");
    CHECK_THROWS_AS(parse_fasta_stream(spaced, "mem"), FastaError);
}

TEST_CASE("a record with no residues is an error at its header line") {
    std::istringstream in(">a\nMKT\n>empty\n>c\nWW\n");
    try {
        parse_fasta_stream(in, "mem");
        FAIL("expected FastaError");
    } catch (const FastaError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream trailing(">a\nMKT\n>empty\n");
    CHECK_THROWS_AS(parse_fasta_stream(trailing, "mem"), FastaError);
}

TEST_CASE("empty input yields an empty list, not an error") {
    std::istringstream in("");
    CHECK(parse_fasta_stream(in, "mem").empty());
    std::istringstream blanks("\n\n");
    CHECK(parse_fasta_stream(blanks, "mem").empty());
}

TEST_CASE("file loading round-trips through the filesystem") {
    const auto path = std::filesystem::temp_directory_path() / "streamfarm_fasta_rt.fa";
    {
        std::ofstream out(path, std::ios::binary);
        out << ">q test\nMKTAYIAKQR\n>d\nWWWW\n";
    }
    const auto seqs = parse_fasta(path.string());
    REQUIRE(seqs.size() == 2);
    CHECK(seqs[0].name == "q");
    CHECK(seqs[0].residues == "MKTAYIAKQR");
    CHECK(seqs[1].residues == "WWWW");
    std::filesystem::remove(path);
}

TEST_CASE("missing file reports the path") {
    try {
        parse_fasta("/nonexistent/db.fa");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent/db.fa") != std::string::npos);
    }
}

}  // TEST_SUITE
