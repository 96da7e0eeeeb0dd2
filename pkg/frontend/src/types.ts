/** Wire types matching the annotation service's JSON exactly. */

export type ItemStatus =
  | 'Pending'
  | 'Answered'
  | 'UnderEdit'
  | 'AwaitingReview'
  | 'Accepted'
  | 'Excluded';

export type EventKind =
  | 'Answer'
  | 'Unlock'
  | 'EditChoice'
  | 'RedesignQuestion'
  | 'ReviewVerdict'
  | 'ExcludeUnnatural'
  | 'ExcludeNSFW';

export const EVENT_KINDS: readonly EventKind[] = [
  'Answer',
  'Unlock',
  'EditChoice',
  'RedesignQuestion',
  'ReviewVerdict',
  'ExcludeUnnatural',
  'ExcludeNSFW',
];

export interface QABundle {
  image_id: string;
  yon: { question: string; answer: boolean };
  mcq: { question: string; options: string[]; correct: number };
  vqa: { question: string; answer: string };
  cap: { caption: string };
}

export interface ItemState {
  image_id: string;
  status: ItemStatus;
  answered_by: string | null;
  author: string | null;
  changed_fields: string[];
  exclusion: string | null;
}

/** Bundle fields an edit event may rewrite (mirror of the service list). */
export const EDITABLE_FIELDS = [
  'yon_question',
  'yon_answer',
  'mcq_question',
  'mcq_options',
  'mcq_correct',
  'vqa_question',
  'vqa_answer',
  'caption',
] as const;

export type EditableField = (typeof EDITABLE_FIELDS)[number];

export type EditBuffer = Partial<Record<EditableField, unknown>>;

export interface NextItemResponse {
  empty: boolean;
  bundle?: QABundle;
  state?: ItemState;
}

export interface EventResponse {
  state: ItemState;
}

export interface ExportResponse {
  bundles: QABundle[];
}

export interface ConflictDetail {
  error: string;
  state: ItemState;
}
