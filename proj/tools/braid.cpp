// braid: run scripts, explore interactively, or inspect the kernel form.
//
//   braid run <file> [--braid as|asmi|asmirs] [--trace-send] [--depth N] [--seed N]
//   braid repl [flags]
//   braid desugar <file>
//
// Exit codes: 0 success, 1 runtime error, 2 parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <pthread.h>

#include "CLI11.hpp"
#include "braid/desugar.hpp"
#include "braid/errors.hpp"
#include "braid/interp.hpp"
#include "braid/kernel_ast.hpp"
#include "braid/parser.hpp"

namespace {

struct Options {
    std::string mode;
    std::string path;
    std::string braid = "none";
    bool trace_send = false;
    int depth = 10000;
    std::uint64_t seed = 0;
};

braid::Braid braid_of(const std::string& name) {
    if (name == "as") return braid::Braid::As;
    if (name == "asmi") return braid::Braid::Asmi;
    if (name == "asmirs") return braid::Braid::Asmirs;
    return braid::Braid::None;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw braid::RuntimeError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_mode(const Options& opt) {
    braid::Interp::Config cfg;
    cfg.depth_limit = opt.depth;
    cfg.trace_send = opt.trace_send;
    cfg.seed = opt.seed;
    braid::Interp interp(cfg);
    interp.load_braid(braid_of(opt.braid));
    interp.run_source(read_file(opt.path));
    return 0;
}

int desugar_mode(const Options& opt) {
    braid::SProgram sp = braid::parse_program(read_file(opt.path));
    braid::KProgram kp = braid::desugar(sp);
    std::cout << braid::dump_kernel(kp);
    return 0;
}

int repl_mode(const Options& opt) {
    braid::Interp::Config cfg;
    cfg.depth_limit = opt.depth;
    cfg.trace_send = opt.trace_send;
    cfg.seed = opt.seed;
    braid::Interp interp(cfg);
    interp.load_braid(braid_of(opt.braid));

    std::cout << "braid repl (:quit to leave, :env to list bindings, :kernel <expr> to desugar)\n";
    std::string line;
    while (true) {
        std::cout << "braid> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line.empty()) continue;
        if (line == ":quit") break;
        if (line == ":env") {
            for (const auto& key : interp.globals().domain()) std::cout << key << "\n";
            continue;
        }
        if (line.rfind(":kernel ", 0) == 0) {
            try {
                auto se = braid::parse_expr(line.substr(8));
                std::cout << braid::dump_kernel(*braid::desugar_expr(*se)) << "\n";
            } catch (const braid::Error& e) {
                std::cout << "error: " << e.what() << "\n";
            }
            continue;
        }
        try {
            braid::SItem item = braid::parse_repl_item(line);
            braid::KItem kitem = braid::Desugarer().item(item);
            braid::Value v = interp.run_item(kitem);
            if (v) std::cout << interp.print_value(v) << "\n";
        } catch (const braid::Error& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

int dispatch(const Options& opt) {
    try {
        if (opt.mode == "run") return run_mode(opt);
        if (opt.mode == "desugar") return desugar_mode(opt);
        return repl_mode(opt);
    } catch (const braid::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const braid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

struct ThreadArgs {
    const Options* opt;
    int rc;
};

void* thread_main(void* p) {
    auto* args = static_cast<ThreadArgs*>(p);
    args->rc = dispatch(*args->opt);
    return nullptr;
}

// Deep meta-circular call chains need more stack than the default; the work
// runs on a thread with a large one so the depth guard fires before the OS
// limit does.
int run_on_big_stack(const Options& opt) {
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, 512u * 1024 * 1024);
    ThreadArgs args{&opt, 1};
    pthread_t tid;
    if (pthread_create(&tid, &attr, thread_main, &args) != 0) return dispatch(opt);
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    return args.rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"braid: a small functional language hosting reflective object systems"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--braid", opt.braid, "preload an object system: as, asmi or asmirs")
            ->check(CLI::IsMember({"none", "as", "asmi", "asmirs"}));
        sub->add_flag("--trace-send", opt.trace_send, "log message delivery steps");
        sub->add_option("--depth", opt.depth, "application depth limit")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "seed for randomized demos");
    };

    CLI::App* run = app.add_subcommand("run", "evaluate a source file");
    run->add_option("file", opt.path, "source file")->required();
    add_common(run);

    CLI::App* repl = app.add_subcommand("repl", "interactive session");
    add_common(repl);

    CLI::App* des = app.add_subcommand("desugar", "print the kernel form of a source file");
    des->add_option("file", opt.path, "source file")->required();

    CLI11_PARSE(app, argc, argv);
    opt.mode = app.get_subcommands().front()->get_name();
    return run_on_big_stack(opt);
}
