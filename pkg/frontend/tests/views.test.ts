/** View rendering against a stubbed client: views must be a pure
 * function of API responses (plus selection state). */

import { describe, expect, it } from 'vitest';

import type { ApiClient } from '../src/api';
import { renderCurrentLinks } from '../src/views/currentLinks';
import { renderSettings } from '../src/views/settings';
import type { LinkDetail } from '../src/types';

const flush = () => new Promise((resolve) => setTimeout(resolve, 0));

const DETAIL: LinkDetail = {
  link_id: 'lnk-1',
  created_by: 'root',
  created_at: '2026-01-01T00:00:00+00:00',
  endpoints: [
    {
      instance_id: 'ins-a', origin_id: '7', element_type: 'Experiment',
      title_snapshot: 'Entry', instance_display_name: 'Notebook',
      metadata: {
        type: 'Experiment', name: 'Entry', id: '7',
        extras: {
          body: { value: '<p>rich <script>alert(1)</script>text</p>', html: true },
          date: { value: '2026-01-01', html: false },
        },
      },
      error: null,
    },
    {
      instance_id: 'ins-b', origin_id: 'Project:1', element_type: 'Project',
      title_snapshot: 'Proj', instance_display_name: 'Repository',
      metadata: null,
      error: { code: 'connect_failed', message: 'host is down' },
    },
  ],
};

function stubApi(overrides: Partial<Record<keyof ApiClient, unknown>>): ApiClient {
  return overrides as unknown as ApiClient;
}

describe('current links view', () => {
  it('renders the empty state', async () => {
    const container = document.createElement('div');
    await renderCurrentLinks(container, {
      api: stubApi({ links: async () => ({ links: [] }) }),
    });
    expect(container.textContent).toContain('No links yet.');
  });

  it('renders partial detail with a warning badge for a down endpoint', async () => {
    const container = document.createElement('div');
    const api = stubApi({
      links: async () => ({
        links: [{
          link_id: 'lnk-1', created_by: 'root', created_at: '',
          endpoints: [
            { title_snapshot: 'Entry', element_type: 'Experiment',
              instance_display_name: 'Notebook' },
            { title_snapshot: 'Proj', element_type: 'Project',
              instance_display_name: 'Repository' },
          ],
        }],
      }),
      linkDetail: async () => DETAIL,
    });
    await renderCurrentLinks(container, { api });
    container.querySelector<HTMLButtonElement>('.link-summary')!.click();
    await flush();

    const badge = container.querySelector<HTMLElement>('.warning-badge')!;
    expect(badge.dataset.code).toBe('connect_failed');
    // reachable endpoint still renders, HTML extras sanitized
    expect(container.textContent).toContain('rich text');
    expect(container.querySelector('script')).toBeNull();
    expect(container.textContent).toContain('2026-01-01');
  });

  it('re-rendering from the same responses is identical', async () => {
    const api = stubApi({
      links: async () => ({ links: [] }),
    });
    const first = document.createElement('div');
    const second = document.createElement('div');
    await renderCurrentLinks(first, { api });
    await renderCurrentLinks(second, { api });
    expect(first.innerHTML).toBe(second.innerHTML);
  });
});

describe('settings view', () => {
  it('lists instances and offers every provider kind in the dropdown', async () => {
    const container = document.createElement('div');
    await renderSettings(container, {
      api: stubApi({
        instances: async () => ({
          instances: [{
            instance_id: 'ins-a', display_name: 'Notebook', kind: 'elabftw',
            host: 'https://eln.example', has_api_key: true, created_at: '',
          }],
          providers: [
            { kind: 'elabftw', display_name: 'eLabFTW lab notebook',
              capabilities: [], config_fields: ['host', 'api_key'] },
            { kind: 'mock', display_name: 'Mock provider',
              capabilities: [], config_fields: ['host'] },
            { kind: 'omero', display_name: 'OMERO image repository',
              capabilities: [], config_fields: ['host'] },
          ],
        }),
      }),
    });
    expect(container.textContent).toContain('Notebook');
    const options = Array.from(
      container.querySelectorAll<HTMLOptionElement>('.field-kind option'));
    expect(options.map((option) => option.value)).toEqual(['elabftw', 'mock', 'omero']);
  });
});
