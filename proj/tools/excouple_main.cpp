#include "excouple/cli.hpp"

int main(int argc, char** argv) {
    return excouple::run_cli(argc, argv);
}
