/** UI flows against a live service seeded with the theraoptik world.
 *
 * Spawns the backend as a child process and drives the real views
 * through DOM events in jsdom: Settings form, Link Creation checkbox
 * flow, Current Links rendering, and the population dialog.
 */

import { ChildProcess, spawn } from 'node:child_process';
import { mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { App } from '../src/main';

const PORT = 8971;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let root: HTMLElement;
let app: App;

async function waitFor<T>(
  probe: () => T | null | undefined | false,
  what: string,
  timeoutMs = 15000,
): Promise<T> {
  const startedAt = Date.now();
  for (;;) {
    const value = probe();
    if (value) return value;
    if (Date.now() - startedAt > timeoutMs) {
      throw new Error(`timed out waiting for ${what}\n---\n${root?.innerHTML ?? ''}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 60));
  }
}

async function serverReady(): Promise<void> {
  const startedAt = Date.now();
  for (;;) {
    try {
      const response = await fetch(`${BASE}/api/v1/openapi`);
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    if (Date.now() - startedAt > 30000) throw new Error('backend never became ready');
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

const query = <E extends Element>(selector: string): E | null =>
  root.querySelector<E>(selector);

const queryAll = <E extends Element>(selector: string): E[] =>
  Array.from(root.querySelectorAll<E>(selector));

function setValue(input: HTMLInputElement | HTMLSelectElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event('input', { bubbles: true }));
  input.dispatchEvent(new Event('change', { bubbles: true }));
}

beforeAll(async () => {
  const dbDir = mkdtempSync(join(tmpdir(), 'leo-ui-'));
  server = spawn(
    'python3',
    ['-m', 'leo.cli', 'serve', '--bind', `127.0.0.1:${PORT}`,
     '--db', join(dbDir, 'ui.sqlite3'), '--seed-fixture', 'theraoptik'],
    { env: { ...process.env, LEO_SECRET: 'ui-flow-secret' }, stdio: 'pipe' },
  );
  await serverReady();

  root = document.createElement('div');
  document.body.appendChild(root);
  app = new App(root, new ApiClient(BASE));
  app.start();
});

afterAll(() => {
  server?.kill();
});

describe('criterion 9: UI flows against the live service', () => {
  it('logs in through the form', async () => {
    const username = await waitFor(
      () => query<HTMLInputElement>('.login-username'), 'login form');
    setValue(username, 'root');
    setValue(query<HTMLInputElement>('.login-password')!, 'omero');
    query<HTMLFormElement>('.login-form')!.dispatchEvent(
      new Event('submit', { bubbles: true, cancelable: true }));
    await waitFor(() => query('.tab-bar'), 'tab bar after login');
    expect(window.sessionStorage.getItem('leo_token')).toBeTruthy();
    // only the token is persisted, never credentials
    expect(window.sessionStorage.length).toBe(1);
  });

  it('settings: three-field form creates an instance, bad hosts fail inline', async () => {
    await waitFor(() => queryAll('.instance-table tr').length === 3, 'seeded instance rows');

    query<HTMLButtonElement>('.add-button')!.click();
    const form = query<HTMLFormElement>('.add-instance')!;
    expect(form.hidden).toBe(false);

    setValue(query<HTMLInputElement>('.field-display-name')!, 'Broken world');
    setValue(query<HTMLInputElement>('.field-host')!, 'mock://world-nope');
    setValue(query<HTMLSelectElement>('.field-kind')!, 'mock');
    form.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    const inlineError = await waitFor(
      () => query<HTMLElement>('.add-instance .error:not([hidden])'), 'inline form error');
    expect(inlineError.dataset.code).toBe('connect_failed');

    setValue(query<HTMLInputElement>('.field-display-name')!, 'FMD world');
    setValue(query<HTMLInputElement>('.field-host')!, 'mock://world-fmd/repo');
    form.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    await waitFor(
      () => queryAll('.instance-table tr').some((row) => row.textContent?.includes('FMD world')),
      'new instance row');
    expect(queryAll('.instance-table tr')).toHaveLength(4);
  });

  it('link creation: checkbox flow enables Save at two refs and creates the link', async () => {
    queryAll<HTMLButtonElement>('.tab').find((b) => b.dataset.tab === 'link-creation')!.click();
    await waitFor(() => queryAll('.instance-panel').length === 3, 'one panel per instance');
    const experimentBox = await waitFor(
      () => queryAll<HTMLInputElement>('.element-tree input[type=checkbox]')
        .find((box) => box.dataset.elementType === 'Experiment'),
      'experiment checkbox');

    const saveButton = query<HTMLButtonElement>('.save-link')!;
    expect(saveButton.disabled).toBe(true);

    experimentBox.click();
    await waitFor(() => queryAll('.preview-list li').length === 1, 'preview with one item');
    expect(saveButton.disabled).toBe(true);

    const projectBox = queryAll<HTMLInputElement>('.element-tree input[type=checkbox]')
      .find((box) => box.dataset.elementType === 'Project'
        && box.closest('.instance-panel')?.textContent?.includes('theraoptik'))!;
    projectBox.click();
    await waitFor(() => queryAll('.preview-list li').length === 2, 'preview with two items');
    expect(saveButton.disabled).toBe(false);

    saveButton.click();
    // a successful save lands on Current Links with the fresh link listed
    const summary = await waitFor(
      () => query<HTMLButtonElement>('.link-summary'), 'link summary entry');
    expect(summary.textContent).toContain('TheraOptik dataset (Experiment)');
    expect(summary.textContent).toContain('TheraOptik (Project)');
  });

  it('current links: summary click renders detail from both endpoints', async () => {
    query<HTMLButtonElement>('.link-summary')!.click();
    await waitFor(() => queryAll('.endpoint-card').length === 2, 'two endpoint cards');
    const text = query<HTMLElement>('.link-detail')!.textContent!;
    expect(text).toContain('TheraOptik dataset');
    expect(text).toContain('Experiment');
    expect(text).toContain('Project');
    // notebook body is rendered as sanitized rich text
    await waitFor(() => query('.rich-text table'), 'sanitized body table');
  });

  it('population dialog lists both tables, restricts targets, reports 46 applied', async () => {
    query<HTMLButtonElement>('.additional-actions')!.click();
    const tableSelect = await waitFor(
      () => query<HTMLSelectElement>('.table-select'), 'table dropdown');
    const tableOptions = Array.from(tableSelect.options);
    expect(tableOptions).toHaveLength(2);
    expect(tableOptions.every((option) => !option.disabled)).toBe(true);
    expect(tableOptions[0]!.textContent).toContain('46 rows');
    expect(tableOptions[1]!.textContent).toContain('46 rows');

    // only the linked Project is offered; unlinked datasets are not
    const targetOptions = Array.from(query<HTMLSelectElement>('.target-select')!.options);
    expect(targetOptions.map((option) => option.textContent)).toEqual(['TheraOptik (Project)']);

    query<HTMLButtonElement>('.run-population')!.click();
    const line = await waitFor(() => query<HTMLElement>('.report-line'), 'population report');
    expect(line.textContent).toContain('46 applied');
    expect(line.textContent).toContain('0 failed');
    console.log('PASS  criterion 9: UI flows (settings, linking, detail, population) against the live service');
  });
});
