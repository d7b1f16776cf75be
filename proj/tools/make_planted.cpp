// Writes the planted-evidence benchmark as a canonical corpus and dataset.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "claimcheck/benchmark.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate the planted-evidence benchmark", "make_planted"};
    claimcheck::PlantedOptions options;
    std::string corpus_path;
    std::string claims_path;
    app.add_option("--corpus", corpus_path, "Corpus JSONL output")->required();
    app.add_option("--claims", claims_path, "Dataset JSONL output")->required();
    app.add_option("--distractors", options.distractors, "Distractor documents");
    app.add_option("--count", options.claims, "Claims (one planted document each)");
    app.add_option("--seed", options.seed, "Generator seed");
    app.add_option("--refuted-fraction", options.refuted_fraction, "Share of refuted claims");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto bench = claimcheck::make_planted_benchmark(options);
        std::ofstream corpus(corpus_path, std::ios::binary);
        claimcheck::write_jsonl(corpus, bench.corpus);
        std::ofstream claims(claims_path, std::ios::binary);
        claimcheck::write_dataset_jsonl(claims, bench.claims);
        if (!corpus || !claims) {
            std::cerr << "error: cannot write output\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
