/** Payload shapes of the /api/v1 surface. */

export interface ProviderDescriptor {
  kind: string;
  display_name: string;
  capabilities: string[];
  config_fields: string[];
}

export interface ProviderInstance {
  instance_id: string;
  display_name: string;
  kind: string;
  host: string;
  has_api_key: boolean;
  created_at: string;
}

export interface InstanceListing {
  instances: ProviderInstance[];
  providers: ProviderDescriptor[];
}

export interface ApiElement {
  origin_id: string;
  title: string;
  type: string;
  id: number;
  parent?: number;
  children?: ApiElement[];
}

export interface ElementForest {
  roots: ApiElement[];
}

export interface ExtraValue {
  value: string;
  html: boolean;
}

export interface MetadataRecord {
  type: string;
  name: string;
  id: string;
  extras: Record<string, ExtraValue>;
}

export interface ElementRef {
  instance_id: string;
  origin_id: string;
  element_type: string;
}

export interface EndpointSummary {
  title_snapshot: string;
  element_type: string;
  instance_display_name: string;
}

export interface LinkSummary {
  link_id: string;
  created_by: string;
  created_at: string;
  endpoints: EndpointSummary[];
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  details?: unknown;
}

export interface EndpointDetail extends ElementRef {
  title_snapshot: string;
  instance_display_name: string;
  metadata: MetadataRecord | null;
  error: ApiErrorPayload | null;
}

export interface LinkDetail {
  link_id: string;
  created_by: string;
  created_at: string;
  endpoints: EndpointDetail[];
}

export interface LinkRecord {
  link_id: string;
  endpoints: (ElementRef & { title_snapshot: string })[];
  created_by: string;
  created_at: string;
}

export interface TableEntry {
  index: number;
  supported: boolean;
  headers?: string[];
  row_count?: number;
  reason?: string;
}

export interface RowDiagnostic {
  row: number;
  status: 'unmatched' | 'ambiguous' | 'write_error';
  detail: string;
}

export interface PopulationReport {
  total_rows: number;
  applied: number;
  overwritten: number;
  unmatched: number;
  ambiguous: number;
  failed: number;
  diagnostics: RowDiagnostic[];
}
