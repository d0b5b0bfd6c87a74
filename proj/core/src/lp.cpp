#include "slsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slsched::lp {

const char* to_string(Status s) {
	switch (s) {
	case Status::Optimal: return "optimal";
	case Status::Infeasible: return "infeasible";
	case Status::Unbounded: return "unbounded";
	case Status::IterationLimit: return "iteration-limit";
	}
	return "unknown";
}

namespace {

void check_well_formed(const LinearProgram& p) {
	if (p.objective.size() != p.num_vars)
		throw std::invalid_argument("lp: objective length differs from num_vars");
	if (p.bounds.size() != p.num_vars)
		throw std::invalid_argument("lp: bounds length differs from num_vars");
	for (const auto& c : p.constraints)
		if (c.coeffs.size() != p.num_vars)
			throw std::invalid_argument("lp: constraint length differs from num_vars");
	for (const auto& b : p.bounds) {
		if (!std::isfinite(b.lower))
			throw std::invalid_argument("lp: lower bounds must be finite");
		if (b.lower > b.upper)
			throw std::invalid_argument("lp: lower bound exceeds upper bound");
	}
}

// Standard-form tableau over shifted variables x' = x - lower, all with
// lower bound 0. Columns: structural, then slack/surplus, then artificial.
// The last tableau column holds B^-1 b.
class Tableau {
public:
	explicit Tableau(const LinearProgram& p) {
		const std::size_t n = p.num_vars;
		m_ = p.constraints.size();

		std::vector<double> rhs(m_);
		std::vector<Relation> rel(m_);
		std::vector<double> sign(m_, 1.0);
		std::size_t slacks = 0, artificials = 0;
		for (std::size_t r = 0; r < m_; ++r) {
			const auto& c = p.constraints[r];
			double b = c.rhs;
			for (std::size_t j = 0; j < n; ++j)
				b -= c.coeffs[j] * p.bounds[j].lower;
			rel[r] = c.relation;
			if (b < 0) {
				sign[r] = -1.0;
				b = -b;
				if (rel[r] == Relation::LessEqual)
					rel[r] = Relation::GreaterEqual;
				else if (rel[r] == Relation::GreaterEqual)
					rel[r] = Relation::LessEqual;
			}
			rhs[r] = b;
			if (rel[r] != Relation::Equal)
				++slacks;
			if (rel[r] != Relation::LessEqual)
				++artificials;
		}

		structural_ = n;
		first_artificial_ = n + slacks;
		cols_ = n + slacks + artificials;
		t_.assign(m_ * (cols_ + 1), 0.0);
		upper_.assign(cols_, kInfinity);
		at_upper_.assign(cols_, 0);
		basic_.assign(cols_, 0);
		basis_.assign(m_, 0);
		for (std::size_t j = 0; j < n; ++j)
			upper_[j] = p.bounds[j].upper - p.bounds[j].lower;

		std::size_t next_slack = n, next_art = first_artificial_;
		for (std::size_t r = 0; r < m_; ++r) {
			const auto& c = p.constraints[r];
			for (std::size_t j = 0; j < n; ++j)
				at(r, j) = sign[r] * c.coeffs[j];
			at(r, cols_) = rhs[r];
			if (rel[r] == Relation::LessEqual) {
				at(r, next_slack) = 1.0;
				set_basic(r, next_slack++);
			} else {
				if (rel[r] == Relation::GreaterEqual)
					at(r, next_slack++) = -1.0;
				at(r, next_art) = 1.0;
				set_basic(r, next_art++);
			}
		}
	}

	std::size_t rows() const { return m_; }
	std::size_t cols() const { return cols_; }
	std::size_t first_artificial() const { return first_artificial_; }

	// Runs simplex iterations on the given column costs. Columns with
	// index >= enter_limit never enter the basis.
	Status optimize(const std::vector<double>& cost, std::size_t enter_limit, std::size_t& pivots,
	                std::size_t cap) {
		std::vector<double> beta(m_), reduced(cols_);
		while (true) {
			values_of_basis(beta);
			for (std::size_t j = 0; j < cols_; ++j) {
				if (basic_[j])
					continue;
				double d = cost[j];
				for (std::size_t r = 0; r < m_; ++r)
					d -= cost[basis_[r]] * at(r, j);
				reduced[j] = d;
			}

			std::size_t q = cols_;
			for (std::size_t j = 0; j < enter_limit; ++j) {
				if (basic_[j] || upper_[j] <= 0.0)
					continue;
				if ((!at_upper_[j] && reduced[j] < -kTolerance) || (at_upper_[j] && reduced[j] > kTolerance)) {
					q = j;
					break;
				}
			}
			if (q == cols_)
				return Status::Optimal;
			if (pivots >= cap)
				return Status::IterationLimit;
			++pivots;

			const double s = at_upper_[q] ? -1.0 : 1.0;
			double theta = upper_[q];
			std::size_t leave = m_;
			bool leave_to_upper = false;
			for (std::size_t r = 0; r < m_; ++r) {
				const double alpha = s * at(r, q);
				const std::size_t bv = basis_[r];
				double ratio;
				bool to_upper;
				if (alpha > kTolerance) {
					ratio = beta[r] / alpha;
					to_upper = false;
				} else if (alpha < -kTolerance && std::isfinite(upper_[bv])) {
					ratio = (upper_[bv] - beta[r]) / -alpha;
					to_upper = true;
				} else {
					continue;
				}
				ratio = std::max(ratio, 0.0);
				const bool better = ratio < theta - 1e-12;
				const bool tie = !better && std::abs(ratio - theta) <= 1e-12 && leave < m_ && bv < basis_[leave];
				if (better || tie) {
					theta = ratio;
					leave = r;
					leave_to_upper = to_upper;
				}
			}
			if (!std::isfinite(theta))
				return Status::Unbounded;

			if (leave == m_) {
				at_upper_[q] = !at_upper_[q];
				continue;
			}
			const std::size_t out = basis_[leave];
			pivot(leave, q);
			basic_[out] = 0;
			at_upper_[out] = leave_to_upper ? 1 : 0;
		}
	}

	// Value of each column's shifted variable in the current basic solution.
	std::vector<double> column_values() const {
		std::vector<double> beta(m_);
		values_of_basis(beta);
		std::vector<double> v(cols_, 0.0);
		for (std::size_t j = 0; j < cols_; ++j)
			if (!basic_[j] && at_upper_[j])
				v[j] = upper_[j];
		for (std::size_t r = 0; r < m_; ++r)
			v[basis_[r]] = beta[r];
		return v;
	}

	void pin_artificials() {
		for (std::size_t j = first_artificial_; j < cols_; ++j) {
			upper_[j] = 0.0;
			at_upper_[j] = 0;
		}
	}

private:
	double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
	double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }

	void set_basic(std::size_t r, std::size_t j) {
		basis_[r] = j;
		basic_[j] = 1;
		at_upper_[j] = 0;
	}

	void values_of_basis(std::vector<double>& beta) const {
		for (std::size_t r = 0; r < m_; ++r) {
			double v = at(r, cols_);
			for (std::size_t j = 0; j < cols_; ++j)
				if (!basic_[j] && at_upper_[j])
					v -= at(r, j) * upper_[j];
			beta[r] = v;
		}
	}

	void pivot(std::size_t pr, std::size_t pc) {
		const std::size_t w = cols_ + 1;
		const double piv = at(pr, pc);
		for (std::size_t c = 0; c < w; ++c)
			at(pr, c) /= piv;
		at(pr, pc) = 1.0;
		for (std::size_t r = 0; r < m_; ++r) {
			if (r == pr)
				continue;
			const double f = at(r, pc);
			if (f == 0.0)
				continue;
			for (std::size_t c = 0; c < w; ++c)
				at(r, c) -= f * at(pr, c);
			at(r, pc) = 0.0;
		}
		set_basic(pr, pc);
	}

	std::size_t m_ = 0, cols_ = 0, structural_ = 0, first_artificial_ = 0;
	std::vector<double> t_;
	std::vector<double> upper_;
	std::vector<char> at_upper_;
	std::vector<char> basic_;
	std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const LinearProgram& p) {
	check_well_formed(p);
	const std::size_t n = p.num_vars;
	Solution sol;
	Tableau tab(p);
	const std::size_t cap = 50 * (n + p.constraints.size());

	double rhs_scale = 1.0;
	for (const auto& c : p.constraints)
		rhs_scale = std::max(rhs_scale, std::abs(c.rhs));

	if (tab.first_artificial() < tab.cols()) {
		std::vector<double> phase1(tab.cols(), 0.0);
		for (std::size_t j = tab.first_artificial(); j < tab.cols(); ++j)
			phase1[j] = 1.0;
		Status st = tab.optimize(phase1, tab.cols(), sol.pivots, cap);
		if (st == Status::IterationLimit) {
			sol.status = st;
			return sol;
		}
		auto v = tab.column_values();
		double infeas = 0.0;
		for (std::size_t j = tab.first_artificial(); j < tab.cols(); ++j)
			infeas += v[j];
		if (infeas > 1e-7 * rhs_scale) {
			sol.status = Status::Infeasible;
			return sol;
		}
		tab.pin_artificials();
	}

	std::vector<double> phase2(tab.cols(), 0.0);
	std::copy(p.objective.begin(), p.objective.end(), phase2.begin());
	Status st = tab.optimize(phase2, tab.first_artificial(), sol.pivots, cap);
	if (st != Status::Optimal) {
		sol.status = st;
		return sol;
	}

	auto v = tab.column_values();
	sol.values.resize(n);
	double obj = 0.0;
	for (std::size_t j = 0; j < n; ++j) {
		double x = p.bounds[j].lower + v[j];
		sol.values[j] = std::clamp(x, p.bounds[j].lower, p.bounds[j].upper);
		obj += p.objective[j] * sol.values[j];
	}
	sol.status = Status::Optimal;
	sol.objective = obj;
	return sol;
}

double max_violation(const LinearProgram& p, const std::vector<double>& x) {
	double worst = 0.0;
	for (std::size_t j = 0; j < p.num_vars; ++j) {
		worst = std::max(worst, p.bounds[j].lower - x[j]);
		worst = std::max(worst, x[j] - p.bounds[j].upper);
	}
	for (const auto& c : p.constraints) {
		double lhs = 0.0;
		for (std::size_t j = 0; j < p.num_vars; ++j)
			lhs += c.coeffs[j] * x[j];
		switch (c.relation) {
		case Relation::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
		case Relation::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
		case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
		}
	}
	return worst;
}

}  // namespace slsched::lp
