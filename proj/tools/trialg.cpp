#include <cstdio>
#include <string>
#include <vector>

#include "trialg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    trialg::cli::RunResult res = trialg::cli::run(args);
    if (!res.out.empty()) std::fputs(res.out.c_str(), stdout);
    if (!res.err.empty()) std::fputs(res.err.c_str(), stderr);
    return res.code;
}
