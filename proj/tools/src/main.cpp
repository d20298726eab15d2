#include "mixweyl/app/runner.hpp"

int main(int argc, char** argv) { return mixweyl::app::run_cli(argc, argv); }
