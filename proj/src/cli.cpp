#include "kwise/cli.hpp"

#include "kwise/construction.hpp"
#include "kwise/family_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kwise::cli {

using json = nlohmann::ordered_json;

namespace {

    constexpr int max_cli_n = 30;

    int parse_int(const std::string& s)
    {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw UsageError("not an integer: '" + s + "'");
        return v;
    }

    void require_range(const char* name, int value, int lo, int hi)
    {
        if (value < lo || value > hi)
            throw UsageError(std::string("--") + name + " must be in " + std::to_string(lo) + ".." +
                             std::to_string(hi) + ", got " + std::to_string(value));
    }

    json hex_list(const std::vector<Mask>& masks)
    {
        json out = json::array();
        for (Mask m : masks)
            out.push_back(format_hex(m));
        return out;
    }

    json set_list(const Family& f)
    {
        json out = json::array();
        for (Mask m : f)
            out.push_back(format_set(m));
        return out;
    }

    // Rows share one key order; TSV prints null as an empty cell.
    void emit_rows(std::ostream& out, Format format, const std::vector<std::string>& columns,
                   const std::vector<json>& rows)
    {
        if (format == Format::json) {
            json doc;
            doc["schema"] = 1;
            doc["rows"] = rows;
            out << doc.dump() << '\n';
            return;
        }
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "\t" : "") << columns[i];
        out << '\n';
        for (const json& row : rows) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const json& v = row.at(columns[i]);
                out << (i ? "\t" : "");
                if (v.is_string())
                    out << v.get<std::string>();
                else if (!v.is_null())
                    out << v.dump();
            }
            out << '\n';
        }
    }

    Family load_input(const RunConfig& config, std::istream& in)
    {
        if (!config.input || *config.input == "-")
            return read_family(in);
        return read_family_file(*config.input);
    }

    json to_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

    json partition_json(const BlockPartition& bp)
    {
        json blocks = json::array();
        for (Mask b : bp.blocks)
            blocks.push_back(format_set(b));
        return blocks;
    }

    int run_construct(const RunConfig& c, std::ostream& out)
    {
        const ConstructionParams p{c.k, c.n};
        const ConstructedFamily built = build_family(p);
        const Family& emitted = c.world == World::complement ? built.f : built.fbar;

        std::ostringstream text;
        if (c.header) {
            json header;
            header["schema"] = 1;
            header["k"] = c.k;
            header["n"] = c.n;
            header["world"] = to_string(c.world);
            json sizes = json::array();
            json specials = json::array();
            for (int i = 0; i < built.partition.count(); ++i) {
                sizes.push_back(popcount(built.partition.blocks[i]));
                specials.push_back(elements_of(built.partition.specials[i]).front());
            }
            header["block_sizes"] = sizes;
            header["specials"] = specials;
            header["size"] = emitted.size();
            header["expected_size"] = to_json(expected_size(p));
            text << "# " << header.dump() << '\n';
        }
        write_family(text, emitted);

        if (c.output && *c.output != "-") {
            std::ofstream file(*c.output);
            if (!file)
                throw std::runtime_error("cannot write " + *c.output);
            file << text.str();
        }
        else {
            out << text.str();
        }
        return success;
    }

    int run_verify(const RunConfig& c, std::istream& in, std::ostream& out)
    {
        const Family f = load_input(c, in);
        const Family g = c.world == World::direct ? complement_family(f) : f;
        const Verdict v = is_maximal_kwise(f, c.k, c.world, {c.backend, 0});

        json doc;
        doc["schema"] = 1;
        doc["k"] = c.k;
        doc["n"] = f.universe().size();
        doc["world"] = to_string(c.world);
        doc["backend"] = to_string(c.backend);
        doc["size"] = f.size();
        doc["ok"] = v.ok;
        doc["kwise"] = !v.not_kwise();
        doc["saturated"] = v.not_kwise() ? json(nullptr) : json(!v.not_saturated());
        doc["complement_downset"] = v.complement_downset.value_or(false);
        if (const auto* cover = std::get_if<CoverWitness>(&v.witness)) {
            doc["witness"] = {{"kind", "cover"}, {"masks", hex_list(cover->members)}};
        }
        else if (const auto* gap = std::get_if<GapWitness>(&v.witness)) {
            doc["witness"] = {{"kind", "gap"},
                              {"candidate", format_hex(gap->candidate)},
                              {"completion", hex_list(gap->completion)}};
        }
        else {
            doc["witness"] = nullptr;
        }
        if (!v.ok)
            doc["witness_verified"] = verify_witness(v, g, c.k);
        out << doc.dump() << '\n';

        if (v.not_kwise())
            return not_kwise;
        if (v.not_saturated())
            return not_saturated;
        return success;
    }

    int run_oracle(const RunConfig& c, std::ostream& out)
    {
        const OracleResult r = oracle_min_size(c.k, Universe(c.n));
        json row;
        row["k"] = r.k;
        row["n"] = r.n;
        row["f"] = r.min_size;
        row["extremal_count"] = r.extremal_count;
        row["maximal_count"] = r.maximal_count;
        if (c.format == Format::json) {
            row["sample"] = set_list(*r.sample_extremal);
        }
        else {
            std::string sample;
            for (Mask m : *r.sample_extremal)
                sample += (sample.empty() ? "" : ";") + format_set(m);
            row["sample"] = sample;
        }
        emit_rows(out, c.format, {"k", "n", "f", "extremal_count", "maximal_count", "sample"}, {row});
        return success;
    }

    int run_greedy(const RunConfig& c, std::ostream& out)
    {
        const Universe u(c.n);
        std::vector<json> rows;
        bool all_maximal = true;
        for (int r = 0; r < c.runs; ++r) {
            const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(r);
            const Family g = greedy_saturate(Family(u), c.k, seed, c.order);
            const Verdict v = is_maximal_kwise(g, c.k, World::complement);
            all_maximal = all_maximal && v.ok;
            json row;
            row["seed"] = seed;
            row["k"] = c.k;
            row["n"] = c.n;
            row["size"] = g.size();
            row["maximal"] = v.ok;
            if (c.output) {
                const std::string path = *c.output + "-" + std::to_string(seed) + ".txt";
                write_family_file(path, complement_family(g));
                row["file"] = path;
            }
            else {
                row["file"] = nullptr;
            }
            rows.push_back(row);
        }
        emit_rows(out, c.format, {"seed", "k", "n", "size", "maximal", "file"}, rows);
        return all_maximal ? success : not_saturated;
    }

    int run_distance(const RunConfig& c, std::istream& in, std::ostream& out)
    {
        const bool from_input = c.input.has_value();
        const Family f = from_input ? load_input(c, in) : build_family({c.k, c.n}).f;
        const int n = f.universe().size();
        CubeReport r = c.minimize ? minimize_cube_distance(f, c.k - 1) : cube_distance(f, make_partition({c.k, n}));
        json row;
        row["k"] = c.k;
        row["n"] = n;
        row["size"] = f.size();
        row["q_size"] = r.q_size;
        row["distance"] = r.distance;
        std::string blocks;
        for (Mask b : r.partition.blocks)
            blocks += (blocks.empty() ? "" : ";") + format_set(b);
        row["blocks"] = c.format == Format::json ? partition_json(r.partition) : json(blocks);
        emit_rows(out, c.format, {"k", "n", "size", "q_size", "distance", "blocks"}, {row});
        return success;
    }

    int run_table(const RunConfig& c, std::ostream& out)
    {
        TableOptions options;
        options.k_min = c.k_range.first;
        options.k_max = c.k_range.last;
        options.n_min = c.n_range.first;
        options.n_max = c.n_range.last;
        options.runs = c.runs;
        options.seed = c.seed;
        const auto rows = size_table(options);
        if (c.format == Format::tsv) {
            write_size_table(out, rows);
            return success;
        }
        std::vector<json> items;
        for (const SizeRow& r : rows)
            items.push_back({{"k", r.k},
                             {"n", r.n},
                             {"construction", to_json(r.construction)},
                             {"formula", to_json(r.formula)},
                             {"oracle", to_json(r.oracle)},
                             {"greedy_min", to_json(r.greedy_min)}});
        emit_rows(out, c.format, {}, items);
        return success;
    }

} // namespace

Range parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    Range r;
    if (dots == std::string::npos) {
        r.first = r.last = parse_int(text);
    }
    else {
        r.first = parse_int(text.substr(0, dots));
        r.last = parse_int(text.substr(dots + 2));
    }
    if (r.first > r.last)
        throw UsageError("empty range: " + text);
    return r;
}

RunConfig parse_args(const std::vector<std::string>& args)
{
    CLI::App app{"Maximal k-wise intersecting families: construct, verify, search", "kwise"};
    app.require_subcommand(1, 1);

    RunConfig c;
    std::string world = "complement";
    std::string backend = "auto";
    std::string order = "random";
    std::string format = "tsv";
    std::string k_range;
    std::string n_range;
    std::string input;
    std::string output;
    bool no_header = false;

    const std::vector<std::string> worlds{"direct", "complement"};
    const std::vector<std::string> formats{"tsv", "json"};

    auto* construct = app.add_subcommand("construct", "Emit the block construction as a family file");
    construct->add_option("--k", c.k, "arity (>= 3)")->required();
    construct->add_option("--n", c.n, "universe size (>= 2(k-1))")->required();
    construct->add_option("--world", world, "complement (F) or direct (Fbar)")->check(CLI::IsMember(worlds));
    construct->add_option("-o,--output", output, "write to this file instead of stdout");
    construct->add_flag("--no-header", no_header, "omit the JSON comment line");

    auto* verify = app.add_subcommand("verify", "Check maximal k-wise intersection of a family file");
    verify->add_option("input", input, "family file (default: stdin)");
    verify->add_option("--k", c.k, "arity (>= 2)")->required();
    verify->add_option("--world", world, "world of the input family")->check(CLI::IsMember(worlds));
    verify->add_option("--backend", backend, "cover backend")
        ->check(CLI::IsMember({"auto", "dp", "tuples", "both"}));

    auto* oracle = app.add_subcommand("oracle", "Exact minimum maximal family size (n <= 5)");
    oracle->add_option("--k", c.k, "arity (>= 2)")->required();
    oracle->add_option("--n", c.n, "universe size")->required();
    oracle->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* greedy = app.add_subcommand("greedy", "Seeded greedy saturation from the empty family");
    greedy->add_option("--k", c.k, "arity (>= 2)")->required();
    greedy->add_option("--n", c.n, "universe size (<= 20)")->required();
    greedy->add_option("--seed", c.seed, "first seed");
    greedy->add_option("--runs", c.runs, "number of consecutive seeds");
    greedy->add_option("--order", order, "candidate order")->check(CLI::IsMember({"random", "popcount"}));
    greedy->add_option("-o,--output", output, "write each result (direct world) to PREFIX-<seed>.txt");
    greedy->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* distance = app.add_subcommand("distance", "Count members outside the block cubes");
    distance->add_option("input", input, "complement-world family file (default: the construction)");
    distance->add_option("--k", c.k, "arity; k-1 blocks")->required();
    distance->add_option("--n", c.n, "universe size when no input is given");
    distance->add_flag("--minimize", c.minimize, "minimize over all partitions (n <= 8)");
    distance->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* table = app.add_subcommand("table", "Size table over k and n ranges");
    table->add_option("--k", k_range, "a..b")->required();
    table->add_option("--n", n_range, "a..b")->required();
    table->add_option("--runs", c.runs, "greedy seeds per cell");
    table->add_option("--seed", c.seed, "first greedy seed");
    table->add_option("--format", format)->check(CLI::IsMember(formats));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    }
    catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    }
    catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    c.world = parse_world(world);
    c.backend = parse_backend(backend);
    c.order = parse_order(order);
    c.format = format == "json" ? Format::json : Format::tsv;
    c.header = !no_header;
    if (!input.empty())
        c.input = input;
    if (!output.empty())
        c.output = output;
    if (c.input && *c.input != "-" && !std::ifstream(*c.input))
        throw UsageError("input file not found: " + *c.input);

    if (construct->parsed()) {
        c.command = Command::construct;
        if (c.k < 3)
            throw UsageError("construct needs --k >= 3, got " + std::to_string(c.k));
        require_range("n", c.n, 2 * (c.k - 1), max_cli_n);
    }
    else if (verify->parsed()) {
        c.command = Command::verify;
        require_range("k", c.k, 2, 64);
    }
    else if (oracle->parsed()) {
        c.command = Command::oracle;
        require_range("k", c.k, 2, 64);
        require_range("n", c.n, 1, max_downset_universe);
    }
    else if (greedy->parsed()) {
        c.command = Command::greedy;
        require_range("k", c.k, 2, 64);
        require_range("n", c.n, 1, 20);
        require_range("runs", c.runs, 1, 100000);
    }
    else if (distance->parsed()) {
        c.command = Command::distance;
        require_range("k", c.k, 3, 64);
        if (!c.input)
            require_range("n", c.n, 2 * (c.k - 1), max_cli_n);
    }
    else {
        c.command = Command::table;
        c.k_range = parse_range(k_range);
        c.n_range = parse_range(n_range);
        require_range("k", c.k_range.first, 2, 64);
        require_range("n", c.n_range.first, 1, max_cli_n);
        require_range("n", c.n_range.last, 1, max_cli_n);
        require_range("runs", c.runs, 0, 1000);
    }
    return c;
}

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& /*err*/)
{
    switch (config.command) {
    case Command::construct: return run_construct(config, out);
    case Command::verify: return run_verify(config, in, out);
    case Command::oracle: return run_oracle(config, out);
    case Command::greedy: return run_greedy(config, out);
    case Command::distance: return run_distance(config, in, out);
    case Command::table: return run_table(config, out);
    }
    return failure;
}

int main_entry(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    try {
        return run(parse_args(args), in, out, err);
    }
    catch (const HelpRequested& help) {
        out << help.what();
        return success;
    }
    catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for usage\n";
        return failure;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
}

} // namespace kwise::cli
