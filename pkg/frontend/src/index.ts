export {
  SchemaError,
  readConvergence,
  readLoci,
  readNodes,
  readThetaMap,
} from "./csv.js";
export type {
  ConvergenceRow,
  LociRow,
  NodeRow,
  ThetaMapRow,
} from "./csv.js";
export { renderConvergence } from "./convergence.js";
export { renderThetaMap } from "./thetaMap.js";
export { renderLoci } from "./loci.js";
export { main } from "./cli.js";
