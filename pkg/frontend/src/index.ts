export { ApiClient, ApiError, ConflictError } from './client.js';
export { isActionLegal, legalActions } from './guards.js';
export { renderItem, toHtml } from './render.js';
export type { Button, Screen } from './render.js';
export * from './types.js';
export { validateBundle, wordCount } from './validate.js';
export type { RuleVerdict, ValidationReport } from './validate.js';
export { AnnotationSession, bundleWithEdits } from './viewState.js';
export type { ViewState } from './viewState.js';
