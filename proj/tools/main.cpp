// ietsaf: exact SAF invariant and G_1 membership for interval exchange maps.

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iet/cli.hpp"

namespace fs = std::filesystem;
using namespace iet::cli;

namespace {

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    buf << in.rdbuf();
    return buf.str();
}

int run_batch(JobSpec base, const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::string suffix = std::string(".") + command_name(base.command) +
                         (base.format == Format::Json ? ".out.json" : ".out.txt");
    std::vector<std::future<JobOutcome>> jobs;
    for (const auto& file : files) {
        JobSpec job = base;
        job.color = false;
        job.documents = {read_input(file.string())};
        jobs.push_back(std::async(std::launch::async, [job] { return run(job); }));
    }
    int worst = kOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        JobOutcome r = jobs[i].get();
        fs::path target = files[i];
        target.replace_extension(suffix);
        std::ofstream(target) << (r.exit_code == kInputError || r.exit_code == kComputationLimit ? r.error + "\n"
                                                                                               : r.output);
        std::cout << files[i].filename().string() << ": exit " << r.exit_code;
        if (!r.error.empty()) std::cout << " (" << r.error << ")";
        std::cout << "\n";
        worst = std::max(worst, r.exit_code);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact SAF invariant, G_per / G_1 membership and first-return induction for IETs"};
    app.require_subcommand(1);

    JobSpec job;
    std::string format = "text";
    std::vector<std::string> inputs;
    std::string batch_dir;

    app.add_option("--precision-bits", job.precision_bits, "precision cap for symbolic sign decisions")
        ->capture_default_str();
    app.add_option("--induce-cap", job.induce_cap, "maximum return time during induction")->capture_default_str();
    app.add_option("--keane-depth", job.keane_depth, "orbit depth for the Keane condition check")
        ->capture_default_str();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--batch", batch_dir, "process every *.json file in a directory concurrently");

    auto add_command = [&](const char* name, const char* help, std::size_t files) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto* opt = sub->add_option("files", inputs, "IET document(s); '-' reads stdin");
        if (files == 2) opt->expected(2);
        else opt->expected(0, 1);
        return sub;
    };
    add_command("saf", "print the SAF invariant in wedge coordinates", 1);
    CLI::App* member = add_command("member", "decide membership in G_per or G_1", 1);
    member->add_option("--class", job.member_class, "gper or g1")->check(CLI::IsMember({"gper", "g1"}));
    member->add_flag("--factor", job.with_factorization, "include the rotation factorization");
    add_command("factor", "factor f = g o h2 = h1 o g with g a rotation", 1);
    CLI::App* induce = add_command("induce", "first-return map on a subinterval", 1);
    induce->add_option("--y-left", job.y_left, "left endpoint, e.g. 0 or 1/2-sqrt(2)/4")->required();
    induce->add_option("--y-right", job.y_right, "right endpoint")->required();
    add_command("rank", "dimension over Q of the span of the lengths", 1);
    CLI::App* order = add_command("order", "order of f in its group", 1);
    order->add_option("--cap", job.order_cap, "largest order searched")->capture_default_str();
    add_command("compose", "f o g (g applied first)", 2);
    add_command("check", "run the invariant suite on an IET", 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    job.command = *parse_command(app.get_subcommands().front()->get_name());
    job.format = format == "json" ? Format::Json : Format::Text;
    job.color = job.format == Format::Text && std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);

    try {
        if (!batch_dir.empty()) return run_batch(job, batch_dir);
        if (inputs.empty()) inputs.push_back("-");
        for (const auto& path : inputs) job.documents.push_back(read_input(path));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    JobOutcome r = run(job);
    std::cout << r.output;
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    return r.exit_code;
}
