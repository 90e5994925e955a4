#include "asi/family.hpp"

namespace asi {

std::string to_string(OperatorFamily f) {
    return f == OperatorFamily::Art ? "art" : "drop";
}

OperatorFamily family_from_string(const std::string& s) {
    if (s == "art") return OperatorFamily::Art;
    if (s == "drop") return OperatorFamily::Drop;
    throw InvalidParameter("unknown operator family: " + s);
}

SolverSetup make_solver_setup(OperatorFamily family, const SparseMatrix& a,
                              std::span<const double> b, std::size_t block_count,
                              BlockStrategy strategy, bool global_col_counts) {
    SolverSetup setup;
    if (family == OperatorFamily::Art) {
        setup.ops = make_row_projectors(a, b);
        return setup;
    }
    setup.partition = build_blocks(a.rows(), block_count, strategy);
    setup.drop = make_drop_family(a, b, setup.partition, global_col_counts);
    setup.ops = setup.drop.solver_ops;
    return setup;
}

} // namespace asi
