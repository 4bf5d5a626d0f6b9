// SPDX-License-Identifier: MIT OR Apache-2.0

fn main() {
    std::process::exit(cpgeom::cli::main_from_args(std::env::args_os()));
}
