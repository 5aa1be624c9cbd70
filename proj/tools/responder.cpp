#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "mqc/census.hpp"
#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"
#include "mqc/kuroda.hpp"
#include "mqc/radicand.hpp"

// Line protocol: request = space-separated signed primitive radicands,
// reply = decimal class number or "ERR <message>". Stdout carries replies
// only; anything else belongs on stderr.
int main(int argc, char** argv) {
    CLI::App app{"class-number responder for multiquadratic fields"};
    bool fixtures_only = false;
    std::string cache_path;
    app.add_flag("--fixtures-only", fixtures_only, "answer embedded reference fields only");
    app.add_option("--quad-cache", cache_path, "persistent quadratic class-number cache file");
    CLI11_PARSE(app, argc, argv);

    mqc::QuadCache qcache = cache_path.empty() ? mqc::QuadCache() : mqc::QuadCache(cache_path);
    qcache.set_feasibility_limit(mqc::i64(1) << 44);

    std::string line;
    while (std::getline(std::cin, line)) {
        try {
            std::vector<mqc::Radicand> prim;
            std::string tok;
            for (char c : line + " ") {
                if (c == ' ' || c == '\t' || c == '\r') {
                    if (!tok.empty()) {
                        size_t pos = 0;
                        long long v = std::stoll(tok, &pos);
                        if (pos != tok.size()) throw mqc::Error("bad token: " + tok);
                        prim.push_back(mqc::Radicand(v));
                        tok.clear();
                    }
                } else {
                    tok += c;
                }
            }
            if (prim.empty()) throw mqc::Error("empty request");
            auto key =
                mqc::canonical_key(mqc::split_signs(mqc::complete_radicand_list(prim)).neg);
            const auto& fx = mqc::fixture_class_numbers();
            auto it = fx.find(key);
            mqc::u64 h = 0;
            if (it != fx.end()) {
                h = it->second;
            } else if (fixtures_only) {
                throw mqc::Error("not an embedded reference field");
            } else {
                h = mqc::class_number_multiquad(prim, qcache);
                qcache.save();
            }
            std::cout << h << "\n" << std::flush;
        } catch (const std::exception& e) {
            std::cout << "ERR " << e.what() << "\n" << std::flush;
        }
    }
    qcache.save();
    return 0;
}
