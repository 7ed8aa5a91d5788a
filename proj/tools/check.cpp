#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "capflow/error.hpp"
#include "capflow/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Validate capflow CSV/JSON output against its schema"};
    std::string kind;
    std::string path;
    app.add_option("--kind", kind, "mu, converge, tail, disjoint, maxflow, summary, tail-summary, disjoint-summary, ifun, oracle")
        ->required();
    app.add_option("file", path, "document to check (default stdin)");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (path.empty()) {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read " << path << "\n";
            return 1;
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }

    try {
        const capflow::SchemaCheck check = capflow::check_document(text, capflow::schema_from_name(kind));
        if (!check.ok) {
            std::cerr << "invalid: " << check.message << "\n";
            return 1;
        }
    } catch (const capflow::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}
