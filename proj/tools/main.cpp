#include "commands.hpp"

int main(int argc, char** argv) { return mixdenoise::cli::run(argc, argv); }
