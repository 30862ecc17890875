/**
 * Build-time default for the API base URL. Empty string means same-origin,
 * which is right when the bundle is served from the service's /ui/ route.
 * Users can still override it at runtime via the settings field.
 */
export const DEFAULT_API_BASE = "";
