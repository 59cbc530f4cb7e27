/**
 * Client-side mirror of the server's document invariants.
 *
 * Same JSON-pointer field paths, same message wording, so an inline
 * error and a 422 from the API read identically. This is gatekeeping
 * only: the verdict itself is never computed here.
 */

import type { ScenarioDocument } from "./types";

export interface FieldError {
  field: string;
  message: string;
}

const SQRT2 = Math.SQRT2;

function checkNumber(errors: FieldError[], field: string, value: number): boolean {
  if (typeof value !== "number" || Number.isNaN(value)) {
    errors.push({ field, message: "expected a number, got string" });
    return false;
  }
  if (!Number.isFinite(value)) {
    const name = field.slice(field.lastIndexOf("/") + 1);
    errors.push({ field, message: `${name} must be finite, got ${value}` });
    return false;
  }
  return true;
}

export function validateScenario(doc: ScenarioDocument): FieldError[] {
  const errors: FieldError[] = [];
  const { model, costs, rates, tolerances } = doc;

  const modelOk =
    checkNumber(errors, "/model/theta0", model.theta0) &&
    checkNumber(errors, "/model/theta1", model.theta1) &&
    checkNumber(errors, "/model/sigma", model.sigma);
  if (modelOk) {
    if (model.sigma <= 0) {
      errors.push({
        field: "/model/sigma",
        message: `sigma must be positive, got ${model.sigma}`,
      });
    }
    if (model.theta1 < model.theta0) {
      errors.push({
        field: "/model/theta1",
        message:
          `theta1 must be >= theta0, got theta0=${model.theta0}, ` +
          `theta1=${model.theta1}`,
      });
    }
  }

  const costsOk =
    checkNumber(errors, "/costs/c_tp", costs.c_tp) &&
    checkNumber(errors, "/costs/c_fn", costs.c_fn) &&
    checkNumber(errors, "/costs/c_fp", costs.c_fp) &&
    checkNumber(errors, "/costs/c_tn", costs.c_tn);
  if (costsOk) {
    if (!(costs.c_fp > costs.c_tn)) {
      errors.push({
        field: "/costs/c_fp",
        message:
          `c_fp must exceed c_tn (got c_fp=${costs.c_fp}, c_tn=${costs.c_tn}): ` +
          "a false positive has to cost more than a true negative",
      });
    }
    if (!(costs.c_fn > costs.c_tp)) {
      errors.push({
        field: "/costs/c_fn",
        message:
          `c_fn must exceed c_tp (got c_fn=${costs.c_fn}, c_tp=${costs.c_tp}): ` +
          "a false negative has to cost more than a true positive",
      });
    }
  }

  if (checkNumber(errors, "/rates/p0", rates.p0)) {
    if (!(rates.p0 > 0 && rates.p0 < 1)) {
      errors.push({
        field: "/rates/p0",
        message: `p0 must lie strictly inside (0,1), got ${rates.p0}`,
      });
    }
  }

  const epsOk =
    checkNumber(errors, "/tolerances/epsilon1", tolerances.epsilon1) &&
    checkNumber(errors, "/tolerances/epsilon0", tolerances.epsilon0);
  if (epsOk) {
    let inRange = true;
    for (const name of ["epsilon1", "epsilon0"] as const) {
      const value = tolerances[name];
      if (!(value > 0 && value < 1)) {
        errors.push({
          field: `/tolerances/${name}`,
          message: `${name} must lie strictly inside (0,1), got ${value}`,
        });
        inRange = false;
      }
    }
    // disjoint corner balls: radius is sqrt(2) * epsilon on each side
    const delta1 = SQRT2 * tolerances.epsilon1;
    const delta0 = SQRT2 * tolerances.epsilon0;
    if (inRange && delta1 + delta0 >= SQRT2) {
      errors.push({
        field: "/tolerances/epsilon0",
        message:
          `corner balls overlap: delta1 + delta0 = ${delta1 + delta0} ` +
          ">= sqrt(2); require epsilon1 + epsilon0 < 1",
      });
    }
  }

  return errors;
}
