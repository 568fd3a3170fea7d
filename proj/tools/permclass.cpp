// permclass: counting, membership, encoding, automaton runs, generating
// functions and the full verification suite from one front end.

#include <CLI11.hpp>
#include <iostream>

#include "permclass/gf.hpp"
#include "permclass/io.hpp"

using namespace permclass;
using nlohmann::json;

namespace {

int run_count(const std::string& basis_text, int max_n, bool plain) {
    Basis basis = Basis::parse(basis_text);
    if (!basis.is_antichain())
        std::cerr << "warning: basis patterns are not pairwise incomparable\n";
    CountTable t = count_class(basis, max_n);
    if (plain) {
        for (size_t k = 0; k < t.counts.size(); ++k)
            std::cout << (k ? "," : "") << t.counts[k];
        std::cout << "\n";
    } else {
        std::cout << to_json(t).dump() << "\n";
    }
    return 0;
}

int run_contains(const std::string& perm_text, const std::string& pattern_text) {
    bool yes = contains(Perm::parse(perm_text), Perm::parse(pattern_text));
    std::cout << json{{"contains", yes}}.dump() << "\n";
    return 0;
}

int run_simple(const std::string& perm_text) {
    Perm p = Perm::parse(perm_text);
    json out{{"simple", is_simple(p)}};
    auto blocks = proper_nontrivial_blocks(p);
    json arr = json::array();
    for (const Block& b : blocks)
        arr.push_back({{"segment", {b.i, b.j}}, {"range", {b.a, b.b}}});
    out["proper_blocks"] = arr;
    std::cout << out.dump() << "\n";
    return 0;
}

int run_decompose(const std::string& perm_text, bool substitution) {
    Perm p = Perm::parse(perm_text);
    if (substitution) {
        Decomposition d = substitution_decompose(p);
        json parts = json::array();
        for (const Perm& part : d.parts) parts.push_back(part.str());
        std::cout << json{{"skeleton", d.skeleton.str()}, {"parts", parts}}.dump() << "\n";
        return 0;
    }
    std::cout << to_json(glue_decompose(p)).dump() << "\n";
    return 0;
}

int run_glue(const std::string& left, const std::string& right, const std::string& type) {
    // type spelled like "NW1-0"
    if (type.size() != 5 || (type.substr(0, 2) != "NW" && type.substr(0, 2) != "SE") ||
        type[3] != '-')
        throw CLI::ValidationError("--type", "expected NW<x>-<y> or SE<x>-<y>");
    GlueType g{type.substr(0, 2) == "NW" ? Orient::NW : Orient::SE, type[2] - '0',
               type[4] - '0'};
    Perm out = glue(Perm::parse(left), Perm::parse(right), g);
    std::cout << json{{"glued", out.str()}}.dump() << "\n";
    return 0;
}

int run_encode(const std::string& perm_text, const std::string& cls) {
    Perm p = Perm::parse(perm_text);
    Word w = cls == "A" ? encode_A(p) : phi_prime(p);
    std::cout << json{{"word", word_str(w)}}.dump() << "\n";
    return 0;
}

int run_decode(const std::string& word_text, const std::string& cls) {
    Word w = word_from_json_or_text(word_text);
    Perm p = cls == "A" ? decode_A(w) : psi_prime(w);
    std::cout << json{{"permutation", p.str()}}.dump() << "\n";
    return 0;
}

int run_decode_batch(const std::string& cls) {
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        Word w = word_from_json_or_text(line);
        Perm p = cls == "A" ? decode_A(w) : psi_prime(w);
        std::cout << p.str() << "\n";
    }
    return 0;
}

int run_automaton(const std::string& table, const std::string& word_text,
                  const std::string& initial, bool dump) {
    std::string path = table;
    if (path == "M") path = data_dir() + "/automaton_m.txt";
    if (path == "Mprime") path = data_dir() + "/automaton_mprime.txt";
    Automaton m = Automaton::parse_file(path);
    if (dump) {
        std::cout << m.dump();
        return 0;
    }
    Word w = word_from_json_or_text(word_text);
    bool acc = m.accepts(word_tokens(w), initial);
    std::cout << json{{"accepts", acc}}.dump() << "\n";
    return 0;
}

int run_gf(const std::string& name, int order, const std::string& route_text) {
    Route route;
    if (route_text == "closed") route = Route::closed_form;
    else if (route_text == "pipeline" || route_text == "automaton") route = Route::automaton;
    else throw CLI::ValidationError("--route", "expected closed, pipeline or automaton");
    Series s(order);
    if (name == "f_A") s = gf_class_A(order, route);
    else if (name == "f_Aprime") s = gf_class_Aprime(order, route);
    else if (name == "f_simple_A") s = gf_simple_A(order, route);
    else if (name == "f_simple_Aprime") s = gf_simple_Aprime(order, route);
    else if (name == "fibonacci") s = gf_reference(Reference::fibonacci, order);
    else if (name == "catalan") s = gf_reference(Reference::catalan, order);
    else if (name == "G") s = gf_reference(Reference::G, order);
    else if (name == "skew_indec_G") s = gf_reference(Reference::skew_indec_G, order);
    else throw CLI::ValidationError("--name", "unknown series name " + name);
    std::cout << json{{"name", name}, {"coefficients", to_json(s)}}.dump() << "\n";
    return 0;
}

int run_verify(int max_n, int order, const std::string& corrupt, bool as_json) {
    VerifyOptions opt;
    opt.oracle_depth = max_n;
    opt.order = order;
    opt.corrupt_transition = corrupt == "transition";
    opt.corrupt_coefficient = corrupt == "coefficient";
    VerifyReport rep = verify_all(opt);
    if (as_json) std::cout << rep.json() << "\n";
    else std::cout << rep.table();
    return rep.all_agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutation-class enumeration laboratory"};
    app.require_subcommand(1);

    std::string basis_text, perm_text, pattern_text, word_text, cls = "Aprime";
    std::string left, right, type, table = "M", initial, name = "f_Aprime";
    std::string route = "closed", corrupt = "none";
    int max_n = 9, order = 12;
    unsigned seed = 0;
    bool plain = false, substitution = false, dump = false, batch = false, as_json = false;

    auto* count = app.add_subcommand("count", "count Av(basis) level by level");
    count->add_option("--basis", basis_text, "comma-separated patterns")->required();
    count->add_option("--max-n", max_n, "largest length to count");
    count->add_flag("--plain", plain, "print a bare coefficient list");

    auto* cont = app.add_subcommand("contains", "pattern containment test");
    cont->add_option("permutation", perm_text)->required();
    cont->add_option("pattern", pattern_text)->required();

    auto* simple = app.add_subcommand("simple", "simplicity and proper blocks");
    simple->add_option("permutation", perm_text)->required();

    auto* decomp = app.add_subcommand("decompose", "glue or substitution decomposition");
    decomp->add_option("permutation", perm_text)->required();
    decomp->add_flag("--substitution", substitution, "substitution decomposition instead");

    auto* glue_cmd = app.add_subcommand("glue", "glue two simple permutations");
    glue_cmd->add_option("left", left)->required();
    glue_cmd->add_option("right", right)->required();
    glue_cmd->add_option("--type", type, "NW<x>-<y> or SE<x>-<y>")->required();

    auto* enc = app.add_subcommand("encode", "encode a simple permutation into a word");
    enc->add_option("--class", cls, "A or Aprime");
    enc->add_option("permutation", perm_text)->required();

    auto* dec = app.add_subcommand("decode", "decode a word into a permutation");
    dec->add_option("--class", cls, "A or Aprime");
    dec->add_option("word", word_text);
    dec->add_flag("--batch", batch, "read words from stdin");

    auto* aut = app.add_subcommand("automaton", "run or dump a transition table");
    aut->add_option("--table", table, "M, Mprime or a file path");
    aut->add_option("--initial", initial, "initial state override");
    aut->add_option("word", word_text);
    aut->add_flag("--dump", dump, "re-emit the canonical table");

    auto* gf = app.add_subcommand("gf", "generating functions");
    gf->add_option("--name", name,
                   "f_A f_Aprime f_simple_A f_simple_Aprime fibonacci catalan G skew_indec_G");
    gf->add_option("--order", order, "truncation order");
    gf->add_option("--route", route, "closed or pipeline");

    auto* verify = app.add_subcommand("verify", "cross-check every route against the oracle");
    verify->add_option("--max-n", max_n, "oracle depth");
    verify->add_option("--order", order, "series order");
    verify->add_option("--corrupt", corrupt,
                       "none, transition or coefficient (negative control)");
    verify->add_option("--seed", seed,
                       "sampling seed (reserved; the shipped checks are exhaustive)");
    verify->add_flag("--json", as_json, "emit the JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed()) return run_count(basis_text, max_n, plain);
        if (cont->parsed()) return run_contains(perm_text, pattern_text);
        if (simple->parsed()) return run_simple(perm_text);
        if (decomp->parsed()) return run_decompose(perm_text, substitution);
        if (glue_cmd->parsed()) return run_glue(left, right, type);
        if (enc->parsed()) return run_encode(perm_text, cls);
        if (dec->parsed()) return batch ? run_decode_batch(cls) : run_decode(word_text, cls);
        if (aut->parsed()) return run_automaton(table, word_text, initial, dump);
        if (gf->parsed()) return run_gf(name, order, route);
        if (verify->parsed()) return run_verify(max_n, order, corrupt, as_json);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
